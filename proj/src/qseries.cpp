#include "eiscong/qseries.hpp"

#include <json.hpp>
#include <numeric>

#include "eiscong/error.hpp"

namespace eiscong {

const Rational& QExpansion::operator[](long n) const {
  if (n < 0 || n > truncation) throw TruncationDeficit(n, truncation);
  return coeffs[static_cast<std::size_t>(n)];
}

Sign EisensteinLabel::sign_at(std::uint64_t p) const {
  if (n_minus % p == 0) return Sign::Minus;
  if (n_plus % p == 0) return Sign::Plus;
  throw InvalidArgument("sign_at: prime does not divide the level");
}

void EisensteinLabel::validate() const {
  if (weight < 2 || weight % 2 != 0) throw InvalidArgument("weight must be even and at least 2");
  if (n_minus == 0 || n_plus == 0) throw InvalidArgument("label factors must be positive");
  if (std::gcd(n_minus, n_plus) != 1) throw InvalidArgument("N^- and N^+ must be coprime");
  if (!is_squarefree(level())) throw InvalidArgument("level must be square-free");
  if (weight == 2 && n_plus == 1) throw InvalidArgument("weight 2 requires N^+ > 1");
}

std::string EisensteinLabel::to_string() const {
  return std::to_string(n_minus) + ":" + std::to_string(n_plus);
}

QExpansion eisenstein_level1(int k, long truncation) {
  if (k < 2 || k % 2 != 0) throw InvalidArgument("eisenstein_level1: weight must be even and >= 2");
  if (truncation < 0) throw InvalidArgument("negative truncation");
  QExpansion f;
  f.weight = k;
  f.level = 1;
  f.truncation = truncation;
  f.is_modular = k > 2;
  f.coeffs.assign(static_cast<std::size_t>(truncation) + 1, Rational(0));
  f.coeffs[0] = -bernoulli(static_cast<unsigned>(k)) / (2 * k);
  std::vector<Integer> sig(static_cast<std::size_t>(truncation) + 1, Integer(0));
  for (long d = 1; d <= truncation; ++d) {
    Integer pw = ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(k - 1));
    for (long m = d; m <= truncation; m += d) sig[static_cast<std::size_t>(m)] += pw;
  }
  for (long n = 1; n <= truncation; ++n) f.coeffs[static_cast<std::size_t>(n)] = sig[static_cast<std::size_t>(n)];
  return f;
}

QExpansion apply_A_d(const QExpansion& f, std::uint64_t d) {
  if (d == 0) throw InvalidArgument("A_d needs d >= 1");
  QExpansion g = f;
  g.level = f.level * d;
  if (d == 1) return g;
  for (auto& c : g.coeffs) c = 0;
  for (long n = 0; n * static_cast<long>(d) <= f.truncation; ++n) {
    g.coeffs[static_cast<std::size_t>(n * static_cast<long>(d))] = f.coeffs[static_cast<std::size_t>(n)];
  }
  return g;
}

QExpansion apply_bracket(const QExpansion& f, std::uint64_t p, Sign sign) {
  if (!is_prime(p)) throw InvalidArgument("bracket operator needs a prime");
  QExpansion g = f;
  g.level = f.level * p;
  Rational scale = sign == Sign::Plus ? Rational(ipow(p, static_cast<unsigned>(f.weight - 1))) : Rational(1);
  const long step = static_cast<long>(p);
  for (long n = 0; n * step <= f.truncation; ++n) {
    g.coeffs[static_cast<std::size_t>(n * step)] -= scale * f.coeffs[static_cast<std::size_t>(n)];
  }
  g.is_modular = f.is_modular || sign == Sign::Plus;
  return g;
}

QExpansion eisenstein_eigenform(const EisensteinLabel& label, long truncation) {
  label.validate();
  QExpansion f = eisenstein_level1(label.weight, truncation);
  for (std::uint64_t p : prime_divisors(label.level())) f = apply_bracket(f, p, label.sign_at(p));
  if (!f.is_modular) throw Error("eisenstein_eigenform: composition is not modular");
  return f;
}

std::vector<EisensteinLabel> eisenstein_labels(int k, std::uint64_t level) {
  if (k < 2 || k % 2 != 0) throw InvalidArgument("weight must be even and >= 2");
  if (!is_squarefree(level)) throw InvalidArgument("level must be square-free");
  if (k == 2 && level == 1) throw InvalidArgument("weight 2 needs level > 1");
  std::vector<EisensteinLabel> out;
  for (std::uint64_t nm : divisors(level)) {
    EisensteinLabel l{k, nm, level / nm};
    if (k == 2 && l.n_plus == 1) continue;
    out.push_back(l);
  }
  return out;
}

std::vector<std::pair<EisensteinLabel, QExpansion>> eisenstein_basis(int k, std::uint64_t level, long truncation) {
  std::vector<std::pair<EisensteinLabel, QExpansion>> out;
  for (const auto& l : eisenstein_labels(k, level)) out.emplace_back(l, eisenstein_eigenform(l, truncation));
  return out;
}

Rational a0_closed_form(const EisensteinLabel& label) {
  label.validate();
  if (label.n_minus > 1) return 0;
  Rational a0 = -bernoulli(static_cast<unsigned>(label.weight)) / (2 * label.weight);
  for (std::uint64_t p : prime_divisors(label.level())) {
    a0 *= Rational(1 - ipow(p, static_cast<unsigned>(label.weight - 1)));
  }
  return a0;
}

Integer eisenstein_eigenvalue(const EisensteinLabel& label, std::uint64_t q) {
  if (!is_prime(q)) throw InvalidArgument("eigenvalue index must be prime");
  Integer qk = ipow(q, static_cast<unsigned>(label.weight - 1));
  if (label.n_plus % q == 0) return 1;
  if (label.n_minus % q == 0) return qk;
  return 1 + qk;
}

QExpansion hecke_T(const QExpansion& f, std::uint64_t q, long out_truncation) {
  if (!is_prime(q)) throw InvalidArgument("hecke_T needs a prime");
  if (f.level % q == 0) throw InvalidArgument("hecke_T: q divides the level; use hecke_U");
  const long qq = static_cast<long>(q);
  if (out_truncation < 0) throw InvalidArgument("negative truncation");
  if (out_truncation * qq > f.truncation) throw TruncationDeficit(out_truncation * qq, f.truncation);
  QExpansion g;
  g.weight = f.weight;
  g.level = f.level;
  g.truncation = out_truncation;
  g.is_modular = f.is_modular;
  g.coeffs.assign(static_cast<std::size_t>(out_truncation) + 1, Rational(0));
  Rational qk(ipow(q, static_cast<unsigned>(f.weight - 1)));
  for (long n = 0; n <= out_truncation; ++n) {
    Rational c = f.coeffs[static_cast<std::size_t>(n * qq)];
    if (n % qq == 0) c += qk * f.coeffs[static_cast<std::size_t>(n / qq)];
    g.coeffs[static_cast<std::size_t>(n)] = c;
  }
  return g;
}

QExpansion hecke_T(const QExpansion& f, std::uint64_t q) {
  return hecke_T(f, q, f.truncation / static_cast<long>(q));
}

QExpansion hecke_U(const QExpansion& f, std::uint64_t p, long out_truncation) {
  if (!is_prime(p)) throw InvalidArgument("hecke_U needs a prime");
  if (f.level % p != 0) throw InvalidArgument("hecke_U: p does not divide the level");
  const long pp = static_cast<long>(p);
  if (out_truncation < 0) throw InvalidArgument("negative truncation");
  if (out_truncation * pp > f.truncation) throw TruncationDeficit(out_truncation * pp, f.truncation);
  QExpansion g;
  g.weight = f.weight;
  g.level = f.level;
  g.truncation = out_truncation;
  g.is_modular = f.is_modular;
  g.coeffs.resize(static_cast<std::size_t>(out_truncation) + 1);
  for (long n = 0; n <= out_truncation; ++n) g.coeffs[static_cast<std::size_t>(n)] = f.coeffs[static_cast<std::size_t>(n * pp)];
  return g;
}

QExpansion hecke_U(const QExpansion& f, std::uint64_t p) {
  return hecke_U(f, p, f.truncation / static_cast<long>(p));
}

long sturm_bound(int k, std::uint64_t level) {
  if (!is_squarefree(level)) throw InvalidArgument("sturm_bound: level must be square-free");
  Integer idx = 1;
  for (std::uint64_t p : prime_divisors(level)) idx *= static_cast<unsigned long>(p + 1);
  Integer b = idx * k / 12;
  return b.get_si();
}

std::string to_json(const QExpansion& f) {
  nlohmann::ordered_json j;
  j["weight"] = f.weight;
  j["level"] = f.level;
  j["truncation"] = f.truncation;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : f.coeffs) arr.push_back(to_string(c));
  j["coeffs"] = arr;
  return j.dump();
}

}  // namespace eiscong

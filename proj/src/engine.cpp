#include "eiscong/engine.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <thread>

#include "eiscong/error.hpp"
#include "json.hpp"

namespace eiscong {

std::vector<std::uint64_t> CandidateReport::list() const {
  std::vector<std::uint64_t> out;
  for (const auto& p : primes) out.push_back(p.ell);
  return out;
}

namespace {

void add_primes_of(std::map<std::uint64_t, CandidatePrime>& acc, const Integer& x, int rule) {
  if (x == 0) return;
  for (const Integer& p : prime_divisors(Integer(abs(x)))) {
    auto& c = acc[p.get_ui()];
    c.ell = p.get_ui();
    if (std::find(c.cases.begin(), c.cases.end(), rule) == c.cases.end()) c.cases.push_back(rule);
  }
}

// -(B_k/2k) prod (1 - p_i^s); s = 1 is the printed statement, s = k - 1 the
// constant term the proof actually bounds. They agree at k = 2.
Rational theorem_quantity(const EisensteinLabel& label, unsigned s) {
  Rational x = -bernoulli(static_cast<unsigned>(label.weight)) / (2 * label.weight);
  for (std::uint64_t p : prime_divisors(label.level())) x *= Rational(Integer(1 - ipow(p, s)));
  return x;
}

Valuation floor_div(Valuation v, int e) {
  if (v.is_infinite()) return v;
  long x = v.value();
  long q = x / e;
  if (x % e != 0 && x < 0) --q;
  return Valuation(q);
}

Valuation rational_ord(const Rational& x, const PrimeIdealData& P) { return P.e * v_ell(x, P.ell); }

}  // namespace

CandidateReport candidate_primes(const EisensteinLabel& label) {
  label.validate();
  std::map<std::uint64_t, CandidatePrime> acc;
  const int k = label.weight;
  if (label.n_minus == 1) {
    for (unsigned s : {1u, static_cast<unsigned>(k - 1)}) {
      Rational x = theorem_quantity(label, s);
      add_primes_of(acc, x.get_num(), 1);
      add_primes_of(acc, x.get_den(), 1);
    }
  } else {
    Integer g = 0;
    for (std::uint64_t p : prime_divisors(label.n_minus)) {
      Integer t = 1 - ipow(p, static_cast<unsigned>(k == 2 ? 2 : k));
      g = gcd(g, t);
    }
    if (k > 2)
      for (std::uint64_t p : prime_divisors(label.n_plus)) g = gcd(g, Integer(1 - ipow(p, static_cast<unsigned>(k - 2))));
    add_primes_of(acc, g, k == 2 ? 2 : 3);
  }
  for (std::uint64_t p : prime_divisors(label.level())) {
    auto& c = acc[p];
    c.ell = p;
    c.divides_level = true;
  }
  CandidateReport rep;
  rep.label = label;
  for (auto& [ell, c] : acc) rep.primes.push_back(std::move(c));
  return rep;
}

// ---------------------------------------------------------------------------

FieldElement PreparedForm::ap_bad(std::uint64_t p) const {
  if (p < an.size()) return an[p];
  auto it = record.atkin_lehner.find(p);
  if (it == record.atkin_lehner.end())
    throw DataUnavailable("no coefficient or Atkin-Lehner sign at " + std::to_string(p) + " for form " + record.orbit_label);
  Integer pk = ipow(p, static_cast<unsigned>(record.weight / 2 - 1));
  return field->from_rational(Rational(-it->second * pk));
}

PreparedForm prepare_form(const NewformRecord& r, std::size_t index) {
  PreparedForm f;
  f.record = r;
  f.index = index;
  try {
    f.field = std::make_shared<const NumberField>(r.min_poly);
  } catch (const InvalidArgument& e) {
    throw SchemaError("form " + r.orbit_label + ": " + e.what());
  }
  for (const auto& c : r.an) f.an.push_back(f.field->from_coords(c));
  std::ostringstream fp;
  int count = 0;
  for (std::uint64_t p = 2; p < f.an.size() && count < 5; ++p) {
    if (!is_prime(p)) continue;
    if (count++) fp << ",";
    fp << p << ":" << to_string(f.field->trace(f.an[p]));
  }
  f.fingerprint = fp.str();
  return f;
}

Valuation congruence_exponent(const PreparedForm& form, const EisensteinLabel& label, const PrimeIdealData& lambda,
                              long B) {
  const NumberField& K = *form.field;
  Valuation r = Valuation::infinity();
  Rational a0 = a0_closed_form(label);
  if (a0 != 0) r = rational_ord(a0, lambda);
  for (std::uint64_t q : primes_up_to(static_cast<std::uint64_t>(std::max(B, 1L)))) {
    if (r == Valuation(0)) break;
    if (q >= form.an.size()) throw DataUnavailable("form " + form.record.orbit_label + " is truncated below " + std::to_string(B));
    FieldElement diff = K.sub(form.an[q], K.from_rational(Rational(eisenstein_eigenvalue(label, q))));
    r = std::min(r, ord_lambda(K, diff, lambda));
  }
  return r;
}

bool congruence_holds(const PreparedForm& form, const EisensteinLabel& label, const PrimeIdealData& lambda, long r,
                      long from, long to, bool primes_only) {
  const NumberField& K = *form.field;
  if (from == 0 && rational_ord(a0_closed_form(label), lambda) < Valuation(r)) return false;
  QExpansion E = eisenstein_eigenform(label, to);
  for (long n = std::max(from, 1L); n <= to; ++n) {
    if (primes_only && !is_prime(static_cast<std::uint64_t>(n))) continue;
    if (static_cast<std::size_t>(n) >= form.an.size()) throw DataUnavailable("form truncated below " + std::to_string(to));
    FieldElement diff = K.sub(form.an[static_cast<std::size_t>(n)], K.from_rational(E[n]));
    if (ord_lambda(K, diff, lambda) < Valuation(r)) return false;
  }
  return true;
}

MValue m_value(const PreparedForm& form, const EisensteinLabel& label, std::uint64_t ell, const PrimeIdealData* lambda) {
  const NumberField& K = *form.field;
  std::vector<FieldElement> diffs;
  for (std::uint64_t p : prime_divisors(label.level()))
    diffs.push_back(K.sub(form.ap_bad(p), K.from_rational(Rational(eisenstein_eigenvalue(label, p)))));
  Rational a0 = a0_closed_form(label);
  if (a0 != 0) diffs.push_back(K.from_rational(-a0));
  auto level_at = [&](const PrimeIdealData& P) {
    Valuation s = Valuation::infinity();
    for (const auto& x : diffs) s = std::min(s, floor_div(ord_lambda(K, x, P), P.e));
    return s;
  };
  MValue out;
  out.m = Valuation::infinity();
  for (const auto& P : factor_prime(K, ell)) out.m = std::min(out.m, level_at(P));
  out.m_single = lambda ? level_at(*lambda) : out.m;
  if (out.m < Valuation(0)) out.m = Valuation(0);
  if (out.m_single < Valuation(0)) out.m_single = Valuation(0);
  return out;
}

SearchOutcome search_forms(const std::vector<PreparedForm>& forms, const EisensteinLabel& label, std::uint64_t ell) {
  label.validate();
  if (!is_prime(ell)) throw InvalidArgument("search: ell must be prime");
  SearchOutcome out;
  const std::uint64_t N = label.level();
  const int k = label.weight;
  Rational a0 = a0_closed_form(label);
  if (a0 != 0 && v_ell(a0, ell) <= Valuation(0)) return out;  // Step 1
  const long B = std::max(1L, sturm_bound(k, N));
  for (const auto& form : forms) {
    const NewformRecord& rec = form.record;
    if (rec.level != N || rec.weight != k) throw InvalidArgument("search: form level or weight differs from the label");
    if (!rec.usable || rec.truncation() < B) {
      out.skipped.push_back({rec.orbit_label, ell, "truncated at " + std::to_string(rec.truncation()) + " below the Sturm bound " + std::to_string(B)});
      continue;
    }
    std::vector<PrimeIdealData> ideals;
    try {
      ideals = factor_prime(*form.field, ell);
    } catch (const IndexDivisorUnsupported& e) {
      out.skipped.push_back({rec.orbit_label, ell, e.what()});
      continue;
    }
    std::optional<MValue> mv;
    for (const auto& P : ideals) {
      ++out.pairs_tested;
      Valuation r = congruence_exponent(form, label, P, B);
      if (r.is_infinite()) {
        out.skipped.push_back({rec.orbit_label, ell, "coefficients agree with the Eisenstein series exactly"});
        continue;
      }
      if (r.value() <= 0) continue;
      CongruenceResult res;
      res.N = N;
      res.n_minus = label.n_minus;
      res.n_plus = label.n_plus;
      res.k = k;
      res.ell = ell;
      res.lambda_label = P.label;
      res.r = r.value();
      res.e = P.e;
      res.f = P.f;
      res.d = rec.degree;
      MValue m = m_value(form, label, ell, &P);
      res.m = m.m;
      res.m_single = m.m_single;
      res.form_label = rec.orbit_label;
      res.form_index = form.index;
      res.fingerprint = form.fingerprint;
      out.results.push_back(std::move(res));
    }
  }
  return out;
}

SearchOutcome search(NewformStore& store, int k, std::uint64_t N, const EisensteinLabel& label, std::uint64_t ell) {
  if (label.level() != N || label.weight != k) throw InvalidArgument("search: label does not match (k, N)");
  std::vector<NewformRecord> recs = store.lookup(N, k);
  std::vector<PreparedForm> forms;
  for (std::size_t i = 0; i < recs.size(); ++i) forms.push_back(prepare_form(recs[i], i));
  return search_forms(forms, label, ell);
}

// ---------------------------------------------------------------------------

BoundCheck check_bound_theorem(const CongruenceResult& res) {
  if (res.n_minus != 1) throw InapplicableBound("theorem bound needs every sign +");
  BoundCheck b;
  b.bound = res.e * v_ell(theorem_quantity(res.label(), static_cast<unsigned>(res.k - 1)), res.ell);
  b.holds = Valuation(res.r) <= b.bound;
  return b;
}

CorollaryCheck check_bound_corollary(const CongruenceResult& res) {
  CorollaryCheck c;
  EisensteinLabel label = res.label();
  if (a0_closed_form(label) != 0) {
    c.reason = "a_0(E) is nonzero";
    return c;
  }
  if (label.n_minus % res.ell == 0) {
    c.reason = "ell divides N^-";
    return c;
  }
  c.applicable = true;
  c.bound = Valuation::infinity();
  const int k = res.k;
  for (std::uint64_t p : prime_divisors(label.n_plus))
    c.bound = std::min(c.bound, res.e * v_ell(Rational(Integer(1 - ipow(p, static_cast<unsigned>(k - 2)))), res.ell));
  for (std::uint64_t p : prime_divisors(label.n_minus))
    c.bound = std::min(c.bound, res.e * v_ell(Rational(Integer(1 - ipow(p, static_cast<unsigned>(k)))), res.ell));
  c.holds = Valuation(res.r) <= c.bound;
  c.side_conclusion = label.n_plus % res.ell != 0;
  c.side_conclusion_implied = k > 2;
  return c;
}

std::string to_string(RationalVerdict v) {
  switch (v) {
    case RationalVerdict::PowerAtMostFive:
      return "allowed: ell^r in {2,3,4,5}";
    case RationalVerdict::SevenAt13And2:
      return "allowed: ell^r = 7 with label 13:2";
    case RationalVerdict::Violation:
      return "violation";
    case RationalVerdict::NotApplicable:
      return "not applicable";
  }
  return "not applicable";
}

RationalVerdict classify_rational_weight2(const CongruenceResult& res) {
  auto ps = factor_u64(res.N);
  if (res.k != 2 || res.d != 1 || ps.size() != 2 || ps[0].second != 1 || ps[1].second != 1)
    return RationalVerdict::NotApplicable;
  if (res.r < 1) return RationalVerdict::NotApplicable;
  Integer q = ipow(res.ell, static_cast<unsigned>(std::min(res.r, 64L)));
  if (q == 2 || q == 3 || q == 4 || q == 5) return RationalVerdict::PowerAtMostFive;
  if (q == 7 && res.n_minus == 13 && res.n_plus == 2) return RationalVerdict::SevenAt13And2;
  return RationalVerdict::Violation;
}

// ---------------------------------------------------------------------------

std::string csv_header() { return "n,nm,np,k,l,m,fnumber,idnumber,r,e,f,d"; }

std::string to_csv_row(const CongruenceResult& r) {
  std::ostringstream s;
  s << r.N << "," << r.n_minus << "," << r.n_plus << "," << r.k << "," << r.ell << "," << r.m.to_string() << ","
    << r.form_label << "," << r.lambda_label << "," << r.r << "," << r.e << "," << r.f << "," << r.d;
  return s.str();
}

std::string to_json(const CongruenceResult& r) {
  nlohmann::ordered_json j;
  j["n"] = r.N;
  j["nm"] = r.n_minus;
  j["np"] = r.n_plus;
  j["k"] = r.k;
  j["l"] = r.ell;
  j["m"] = r.m.to_string();
  j["m_single"] = r.m_single.to_string();
  j["fnumber"] = r.form_label;
  j["idnumber"] = r.lambda_label;
  j["r"] = r.r;
  j["e"] = r.e;
  j["f"] = r.f;
  j["d"] = r.d;
  j["fingerprint"] = r.fingerprint;
  return j.dump();
}

bool result_less(const CongruenceResult& a, const CongruenceResult& b) {
  return std::tie(a.N, a.k, a.n_minus, a.n_plus, a.ell, a.form_index, a.lambda_label) <
         std::tie(b.N, b.k, b.n_minus, b.n_plus, b.ell, b.form_index, b.lambda_label);
}

// ---------------------------------------------------------------------------

ScanReport run_scan(NewformStore& store, const ScanOptions& opt) {
  struct Unit {
    int k;
    std::uint64_t N;
  };
  std::vector<Unit> units;
  for (int k : opt.weights)
    for (std::uint64_t N : opt.levels) units.push_back({k, N});
  std::vector<ScanReport> partial(units.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i; (i = next++) < units.size();) {
      const Unit u = units[i];
      ScanReport& rep = partial[i];
      std::string where = "N=" + std::to_string(u.N) + " k=" + std::to_string(u.k);
      try {
        std::vector<EisensteinLabel> labels = eisenstein_labels(u.k, u.N);
        if (opt.label) {
          std::erase_if(labels, [&](const EisensteinLabel& l) {
            return l.n_minus != opt.label->first || l.n_plus != opt.label->second;
          });
        }
        if (labels.empty()) continue;
        std::vector<NewformRecord> recs = store.lookup(u.N, u.k);
        std::vector<PreparedForm> forms;
        for (std::size_t j = 0; j < recs.size(); ++j) forms.push_back(prepare_form(recs[j], j));
        for (const auto& label : labels) {
          std::vector<std::uint64_t> ells = opt.ells.empty() ? candidate_primes(label).list() : opt.ells;
          for (std::uint64_t ell : ells) {
            SearchOutcome o = search_forms(forms, label, ell);
            rep.summary.tested += o.pairs_tested;
            for (auto& r : o.results) rep.results.push_back(std::move(r));
            for (const auto& s : o.skipped)
              rep.skipped.push_back(where + " label " + label.to_string() + " form " + s.form_label + " ell=" +
                                    std::to_string(s.ell) + ": " + s.reason);
          }
        }
      } catch (const DataUnavailable& e) {
        rep.skipped.push_back(where + ": " + e.what());
      } catch (const SchemaError& e) {
        rep.skipped.push_back(where + ": " + e.what());
      }
    }
  };
  unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();

  ScanReport out;
  for (auto& p : partial) {
    out.summary.tested += p.summary.tested;
    for (auto& r : p.results) out.results.push_back(std::move(r));
    for (auto& s : p.skipped) out.skipped.push_back(std::move(s));
  }
  std::sort(out.results.begin(), out.results.end(), result_less);
  std::sort(out.skipped.begin(), out.skipped.end());
  for (const auto& r : out.results) {
    ++out.summary.positive;
    Valuation me = r.e * r.m;
    if (me == Valuation(r.r)) ++out.summary.me_equal;
    if (me > Valuation(r.r)) ++out.summary.me_greater;
  }
  return out;
}

}  // namespace eiscong

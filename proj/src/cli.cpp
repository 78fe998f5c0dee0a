#include "eiscong/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "eiscong/engine.hpp"
#include "eiscong/error.hpp"
#include "json.hpp"

#ifndef EISCONG_DEFAULT_DATA_DIR
#define EISCONG_DEFAULT_DATA_DIR "data"
#endif

namespace eiscong {

namespace {

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InvalidArgument("not a non-negative integer: '" + s + "'");
  return std::stoull(s);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    std::uint64_t v = parse_u64(trim(s));
    return {v, v};
  }
  std::uint64_t a = parse_u64(trim(s.substr(0, dots))), b = parse_u64(trim(s.substr(dots + 2)));
  if (a > b) throw InvalidArgument("empty range '" + s + "'");
  return {a, b};
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    auto [a, b] = parse_range(item);
    for (std::uint64_t v = a; v <= b; ++v) out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::vector<DegreePoint> degree_growth_points(const std::string& csv_text, bool all_labels) {
  std::stringstream in(csv_text);
  std::string line;
  std::vector<std::string> header;
  struct Row {
    std::uint64_t N;
    int d;
  };
  std::vector<Row> rows;
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::stringstream ls(l);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(trim(x));
    return f;
  };
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto f = split(line);
    if (header.empty()) {
      header = f;
      continue;
    }
    auto col = [&](const char* name) -> const std::string& {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end() || static_cast<std::size_t>(it - header.begin()) >= f.size())
        throw SchemaError(std::string("results CSV lacks column ") + name);
      return f[static_cast<std::size_t>(it - header.begin())];
    };
    if (!all_labels && parse_u64(col("nm")) != 1) continue;
    rows.push_back({parse_u64(col("n")), static_cast<int>(parse_u64(col("d")))});
  }
  std::vector<DegreePoint> out;
  for (int t = 10;; t += 10) {
    std::optional<Row> best;
    for (const Row& r : rows)
      if (r.d >= t && (!best || r.N < best->N || (r.N == best->N && r.d > best->d))) best = r;
    if (!best) break;
    out.push_back({t, best->N, best->d});
  }
  return out;
}

namespace {

struct StoreOptions {
  std::string config, fixtures, cache, data_dir = EISCONG_DEFAULT_DATA_DIR;
  bool offline = false;
  std::optional<std::uint64_t> local_max;
  unsigned jobs = 1;
};

void add_store_options(CLI::App* app, StoreOptions& o) {
  app->add_option("--config", o.config, "store configuration JSON");
  app->add_option("--store", o.fixtures, "fixture directory (default DATA/fixtures)");
  app->add_option("--cache", o.cache, "remote cache directory");
  app->add_option("--data", o.data_dir, "data directory holding fixtures/ and the reproduction manifest");
  app->add_flag("--offline", o.offline, "never contact the remote source");
  app->add_option("--local-max-level", o.local_max, "largest level computed locally");
  app->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

StoreConfig make_store_config(const StoreOptions& o) {
  StoreConfig c;
  if (!o.config.empty())
    c = load_store_config(o.config);
  else
    apply_environment(c);
  if (!o.fixtures.empty())
    c.fixture_dir = o.fixtures;
  else if (c.fixture_dir.empty())
    c.fixture_dir = o.data_dir + "/fixtures";
  if (!o.cache.empty()) c.cache_dir = o.cache;
  if (o.offline) c.offline = true;
  if (o.local_max) c.local_max_level = *o.local_max;
  return c;
}

EisensteinLabel parse_label(int k, const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidArgument("label must look like NM:NP, got '" + s + "'");
  EisensteinLabel l{k, parse_u64(s.substr(0, colon)), parse_u64(s.substr(colon + 1))};
  return l;
}

std::vector<std::uint64_t> levels_in(const std::string& spec) {
  auto [a, b] = parse_range(spec);
  if (a == b && !is_squarefree(a)) throw InvalidArgument("level " + std::to_string(a) + " is not square-free");
  std::vector<std::uint64_t> out;
  for (std::uint64_t N = std::max<std::uint64_t>(a, 1); N <= b; ++N)
    if (is_squarefree(N)) out.push_back(N);
  return out;
}

std::vector<int> weights_in(const std::string& spec) {
  std::vector<int> out;
  for (std::uint64_t k : parse_list(spec)) {
    if (k < 2 || k % 2) throw InvalidArgument("weight " + std::to_string(k) + " is not an even integer >= 2");
    out.push_back(static_cast<int>(k));
  }
  return out;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InvalidArgument("cannot write " + path);
    }
    os_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

// ---------------------------------------------------------------------------

int cmd_eis(const std::string& k_spec, const std::string& n_spec, long trunc, const std::string& format,
            const std::string& out_path, std::ostream& out) {
  std::vector<int> ks = weights_in(k_spec);
  auto [a, b] = parse_range(n_spec);
  if (a != b) throw InvalidArgument("eis takes a single level");
  if (a < 1 || !is_squarefree(a)) throw InvalidArgument("level " + std::to_string(a) + " is not square-free");
  Output o(out_path, out);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int k : ks) {
    for (const auto& [label, q] : eisenstein_basis(k, a, trunc)) {
      if (format == "json") {
        nlohmann::ordered_json j;
        j["label"] = label.to_string();
        j["expansion"] = nlohmann::ordered_json::parse(eiscong::to_json(q));
        arr.push_back(j);
        continue;
      }
      *o << "k=" << k << " " << label.to_string() << ":";
      for (long n = 0; n <= q.truncation; ++n) *o << " " << to_string(q[n]);
      *o << "\n";
    }
  }
  if (format == "json") *o << arr.dump(2) << "\n";
  return kExitOk;
}

struct SearchArgs {
  std::string k = "2", N, label, ells, out, format = "csv";
};

int cmd_search(const SearchArgs& a, const StoreOptions& so, std::ostream& out, std::ostream& err) {
  NewformStore store(make_store_config(so));
  std::vector<int> ks = weights_in(a.k);
  ScanOptions opt;
  opt.levels = levels_in(a.N);
  opt.jobs = so.jobs;
  if (!a.ells.empty()) {
    opt.ells = parse_list(a.ells);
    for (auto l : opt.ells)
      if (!is_prime(l)) throw InvalidArgument("--ell " + std::to_string(l) + " is not prime");
  }
  if (!a.label.empty()) {
    EisensteinLabel l = parse_label(ks.front(), a.label);
    opt.label = std::make_pair(l.n_minus, l.n_plus);
  }
  Output o(a.out, out);
  nlohmann::ordered_json doc;
  doc["results"] = nlohmann::ordered_json::array();
  doc["summary"] = nlohmann::ordered_json::array();
  doc["skipped"] = nlohmann::ordered_json::array();
  if (a.format == "csv") *o << csv_header() << "\n";
  std::size_t units = 0, unavailable = 0;
  for (int k : ks) {
    opt.weights = {k};
    ScanReport rep = run_scan(store, opt);
    for (const auto& r : rep.results) {
      if (a.format == "csv")
        *o << to_csv_row(r) << "\n";
      else
        doc["results"].push_back(nlohmann::ordered_json::parse(to_json(r)));
    }
    const ScanSummary& s = rep.summary;
    err << "k=" << k << " r>=0: " << s.tested << "  r>0: " << s.positive << "  m*e=r>0: " << s.me_equal
        << "  m*e>r>0: " << s.me_greater << "\n";
    doc["summary"].push_back({{"k", k},
                              {"r>=0", s.tested},
                              {"r>0", s.positive},
                              {"m*e=r>0", s.me_equal},
                              {"m*e>r>0", s.me_greater}});
    for (const auto& sk : rep.skipped) {
      err << "skipped " << sk << "\n";
      doc["skipped"].push_back(sk);
      // unit-level skips carry no form
      if (sk.find(" label ") == std::string::npos) ++unavailable;
    }
    units += opt.levels.size();
  }
  if (a.format == "json") *o << doc.dump(2) << "\n";
  return units > 0 && unavailable == units ? kExitDataUnavailable : kExitOk;
}

// ---------------------------------------------------------------------------
// reproduce

enum class Verdict { Pass, Mismatch, Unavailable };

struct Report {
  std::ostream& out;
  Verdict v = Verdict::Pass;
  void check(bool ok, const std::string& what) {
    out << (ok ? "  ok       " : "  MISMATCH ") << what << "\n";
    if (!ok) v = Verdict::Mismatch;
  }
};

nlohmann::json load_manifest(const std::string& data_dir) {
  std::string path = data_dir + "/reproduce_manifest.json";
  std::ifstream in(path);
  if (!in) throw DataUnavailable("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

std::string describe(const CongruenceResult& r) {
  return "N=" + std::to_string(r.N) + " label " + r.label().to_string() + " ell=" + std::to_string(r.ell) +
         " r=" + std::to_string(r.r) + " e=" + std::to_string(r.e) + " f=" + std::to_string(r.f) +
         " d=" + std::to_string(r.d) + " m=" + r.m.to_string() + " form " + r.form_label;
}

void reproduce_n26(const nlohmann::json& m, NewformStore& store, Report& rep) {
  const int k = m.at("k");
  const std::uint64_t N = m.at("N"), ell = m.at("ell");
  EisensteinLabel want = parse_label(k, m.at("label"));
  for (const auto& [lab, a2] : m.at("eisenstein_a2").items()) {
    Integer got = eisenstein_eigenvalue(parse_label(k, lab), 2);
    rep.check(got == static_cast<long>(a2), "a_2 of E_" + lab + " = " + to_string(got) + " (expected " + std::to_string(a2.get<long>()) + ")");
  }
  ScanOptions opt;
  opt.weights = {k};
  opt.levels = {N};
  ScanReport scan = run_scan(store, opt);
  for (const auto& s : scan.skipped) throw DataUnavailable(s);
  std::vector<CongruenceResult> hits;
  for (const auto& r : scan.results)
    if (r.ell == ell) hits.push_back(r);
  rep.check(hits.size() == 1, std::to_string(hits.size()) + " congruence(s) modulo " + std::to_string(ell) + " (expected 1)");
  auto recs = store.lookup(N, k);
  if (hits.size() == 1) {
    const auto& h = hits[0];
    rep.out << "  found    " << describe(h) << "\n";
    rep.check(h.n_minus == want.n_minus && h.n_plus == want.n_plus, "label " + h.label().to_string());
    rep.check(h.r == m.at("r").get<long>(), "r = " + std::to_string(h.r));
    rep.check(recs.at(h.form_index).an.at(2).at(0) == m.at("congruent_form_a2").get<long>(),
              "congruent orbit has a_2 = " + to_string(recs.at(h.form_index).an.at(2).at(0)));
  }
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (recs[i].an.at(2).at(0) != m.at("silent_form_a2").get<long>()) continue;
    bool silent = std::none_of(hits.begin(), hits.end(), [&](const CongruenceResult& r) { return r.form_index == i; });
    rep.check(silent, "orbit " + recs[i].orbit_label + " with a_2 = " + to_string(recs[i].an[2][0]) + " has no hit modulo " + std::to_string(ell));
  }
}

void reproduce_mazur(const nlohmann::json& m, NewformStore& store, Report& rep) {
  const int k = m.at("k");
  for (const auto& t : m.at("triples")) {
    std::uint64_t N = t.at("N"), ell = t.at("ell");
    long r = t.at("r");
    SearchOutcome o = search(store, k, N, EisensteinLabel{k, 1, N}, ell);
    bool found = std::any_of(o.results.begin(), o.results.end(), [&](const CongruenceResult& c) { return c.r == r; });
    std::string what = "(" + std::to_string(ell) + "," + std::to_string(r) + "," + std::to_string(N) + ")";
    if (t.contains("family")) what += " [" + t.at("family").get<std::string>() + "]";
    rep.check(found, what + (found ? " found" : " not found"));
  }
}

void reproduce_2651(const nlohmann::json& m, NewformStore& store, Report& rep) {
  const int k = m.at("k");
  const std::uint64_t N = m.at("N"), ell = m.at("ell");
  EisensteinLabel label = parse_label(k, m.at("label"));
  SearchOutcome o = search(store, k, N, label, ell);
  for (const auto& s : o.skipped) rep.out << "  skipped  form " << s.form_label << ": " << s.reason << "\n";
  bool found = false;
  for (const auto& c : o.results) {
    rep.out << "  found    " << describe(c) << "\n";
    if (c.r == m.at("r").get<long>() && c.e == m.at("e").get<int>() && c.f == m.at("f").get<int>() &&
        c.d == m.at("d").get<int>() && c.m == Valuation(m.at("m").get<long>()))
      found = true;
  }
  rep.check(found, "congruence with ell=" + std::to_string(ell) + " r=" + std::to_string(m.at("r").get<long>()) +
                       " e=" + std::to_string(m.at("e").get<int>()) + " f=" + std::to_string(m.at("f").get<int>()) +
                       " d=" + std::to_string(m.at("d").get<int>()) + " m=" + std::to_string(m.at("m").get<long>()));
}

void reproduce_ramification(const nlohmann::json& m, NewformStore& store, unsigned jobs, Report& rep) {
  ScanOptions opt;
  opt.weights = {m.at("k").get<int>()};
  opt.jobs = jobs;
  for (std::uint64_t N = m.at("levels").at(0); N <= m.at("levels").at(1).get<std::uint64_t>(); ++N)
    if (N > 1 && is_squarefree(N)) opt.levels.push_back(N);
  for (const auto& x : m.value("extra_levels", nlohmann::json::array())) opt.levels.push_back(x.get<std::uint64_t>());
  ScanReport scan = run_scan(store, opt);
  for (const auto& s : scan.skipped) throw DataUnavailable(s);
  std::set<std::string> known;
  for (const auto& x : m.at("known_exceptions")) known.insert(x.get<std::string>());
  std::size_t qualifying = 0, exceptions = 0;
  for (const auto& r : scan.results) {
    if (r.ell < m.at("min_ell").get<std::uint64_t>() || r.e < m.at("min_e").get<int>() ||
        r.m < Valuation(m.at("min_m").get<long>()))
      continue;
    ++qualifying;
    if (Valuation(r.r) <= Valuation(r.e)) continue;
    ++exceptions;
    std::string row = to_csv_row(r);
    rep.check(known.count(row) > 0, "r > e at " + describe(r));
  }
  rep.out << "  " << qualifying << " congruence(s) with e > 1, m > 1, ell > 3 in the range; " << exceptions
          << " with r > e\n";
  rep.check(true, "r <= e on every qualifying row outside the known exceptions");
}

int cmd_reproduce(const std::string& target, const StoreOptions& so, std::ostream& out, std::ostream& err) {
  nlohmann::json manifest = load_manifest(so.data_dir);
  if (!manifest.contains(target)) throw InvalidArgument("unknown reproduction target '" + target + "'");
  const nlohmann::json& m = manifest.at(target);
  NewformStore store(make_store_config(so));
  Report rep{out};
  out << target << " (" << m.value("source", "") << ")\n";
  try {
    if (target == "n26")
      reproduce_n26(m, store, rep);
    else if (target == "mazur")
      reproduce_mazur(m, store, rep);
    else if (target == "example2651")
      reproduce_2651(m, store, rep);
    else
      reproduce_ramification(m, store, so.jobs, rep);
  } catch (const DataUnavailable& e) {
    out << target << ": DATA UNAVAILABLE\n";
    err << e.what() << "\n";
    return kExitDataUnavailable;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("manifest entry ") + target + ": " + e.what());
  }
  out << target << ": " << (rep.v == Verdict::Pass ? "PASS" : "FAIL") << "\n";
  return rep.v == Verdict::Pass ? kExitOk : kExitMismatch;
}

int cmd_plot(const std::string& in_path, const std::string& out_path, bool all_labels, std::ostream& out,
             std::ostream& err) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + in_path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::vector<DegreePoint> pts = degree_growth_points(ss.str(), all_labels);
  Output o(out_path, out);
  if (pts.empty()) {
    err << "warning: no qualifying rows in " << in_path << "; no points written\n";
    return kExitOk;
  }
  *o << "threshold,n,d\n";
  for (const auto& p : pts) *o << p.threshold << "," << p.N << "," << p.d << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Congruences between newforms and Eisenstein eigenforms of square-free level", "eiscong"};
  app.require_subcommand(1);

  std::string eis_k = "2", eis_n, eis_format = "text", eis_out;
  long eis_trunc = 10;
  auto* eis = app.add_subcommand("eis", "list the Eisenstein eigenform basis");
  eis->add_option("--k", eis_k, "weight(s)");
  eis->add_option("--N", eis_n, "level")->required();
  eis->add_option("--trunc", eis_trunc, "last coefficient index")->check(CLI::NonNegativeNumber);
  eis->add_option("--format", eis_format)->check(CLI::IsMember({"text", "json"}));
  eis->add_option("--out", eis_out, "output file");

  SearchArgs sa;
  StoreOptions search_store;
  auto* srch = app.add_subcommand("search", "search for congruences; writes CSV rows");
  srch->add_option("--k", sa.k, "weight(s): 2, 2,4 or 2..6");
  srch->add_option("--N", sa.N, "level or range a..b")->required();
  srch->add_option("--label", sa.label, "restrict to label NM:NP");
  srch->add_option("--ell", sa.ells, "restrict to prime(s)");
  srch->add_option("--out", sa.out, "output file");
  srch->add_option("--format", sa.format)->check(CLI::IsMember({"csv", "json"}));
  add_store_options(srch, search_store);

  std::string target;
  StoreOptions repro_store;
  auto* repro = app.add_subcommand("reproduce", "rerun a published example against the manifest");
  repro->add_option("target", target)
      ->required()
      ->check(CLI::IsMember({"n26", "mazur", "example2651", "ramification-bound"}));
  add_store_options(repro, repro_store);

  std::string plot_in, plot_out;
  bool plot_all = false;
  auto* plot = app.add_subcommand("plot-degree-growth", "least level reaching each degree threshold");
  plot->add_option("results", plot_in, "results CSV")->required();
  plot->add_option("--out", plot_out, "output file");
  plot->add_flag("--all-labels", plot_all, "include labels with N^- > 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (eis->parsed()) return cmd_eis(eis_k, eis_n, eis_trunc, eis_format, eis_out, out);
    if (srch->parsed()) return cmd_search(sa, search_store, out, err);
    if (repro->parsed()) return cmd_reproduce(target, repro_store, out, err);
    return cmd_plot(plot_in, plot_out, plot_all, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataUnavailable& e) {
    err << "data unavailable: " << e.what() << "\n";
    return kExitDataUnavailable;
  } catch (const SchemaError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitDataUnavailable;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace eiscong

#include "eiscong/store.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "eiscong/error.hpp"
#include "eiscong/qseries.hpp"
#include "httplib.h"
#include "json.hpp"

namespace eiscong {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string to_string(RecordSource s) {
  switch (s) {
    case RecordSource::LocalComputation:
      return "local-computation";
    case RecordSource::Fixture:
      return "fixture";
    case RecordSource::Remote:
      return "remote";
  }
  return "fixture";
}

RecordSource parse_source(const std::string& s) {
  if (s == "local-computation") return RecordSource::LocalComputation;
  if (s == "fixture") return RecordSource::Fixture;
  if (s == "remote") return RecordSource::Remote;
  throw SchemaError("unknown source '" + s + "'");
}

NewformRecord record_from_orbit(const NewformOrbit& o) {
  NewformRecord r;
  r.level = o.level;
  r.weight = o.weight;
  r.orbit_label = o.label;
  r.degree = o.degree();
  r.min_poly = o.field->min_poly();
  for (const auto& a : o.an) r.an.push_back(a.coords);
  r.atkin_lehner = o.atkin_lehner;
  r.source = RecordSource::LocalComputation;
  return r;
}

namespace {

ojson integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from_json(const ojson& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw SchemaError("bad integer '" + j.get<std::string>() + "'");
    return z;
  }
  throw SchemaError("expected an integer");
}

ojson record_json(const NewformRecord& r) {
  ojson j;
  j["level"] = r.level;
  j["weight"] = r.weight;
  j["orbit_label"] = r.orbit_label;
  j["degree"] = r.degree;
  ojson mp = ojson::array();
  for (const auto& c : r.min_poly) mp.push_back(integer_json(c));
  j["min_poly"] = mp;
  ojson an = ojson::object();
  for (std::size_t n = 1; n < r.an.size(); ++n) {
    ojson v = ojson::array();
    for (const auto& c : r.an[n]) v.push_back(eiscong::to_string(c));
    an[std::to_string(n)] = v;
  }
  j["an"] = an;
  ojson al = ojson::object();
  for (const auto& [p, s] : r.atkin_lehner) al[std::to_string(p)] = s;
  j["atkin_lehner"] = al;
  j["source"] = to_string(r.source);
  return j;
}

std::uint64_t parse_index(const std::string& key) {
  if (key.empty() || key.size() > 18 || key.find_first_not_of("0123456789") != std::string::npos || key[0] == '0')
    throw SchemaError("bad index key '" + key + "'");
  return std::stoull(key);
}

NewformRecord record_from_json(const ojson& j) {
  if (!j.is_object()) throw SchemaError("record is not an object");
  for (const char* key : {"level", "weight", "orbit_label", "degree", "min_poly", "an", "atkin_lehner", "source"})
    if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  NewformRecord r;
  try {
    r.level = j.at("level").get<std::uint64_t>();
    r.weight = j.at("weight").get<int>();
    r.orbit_label = j.at("orbit_label").get<std::string>();
    r.degree = j.at("degree").get<int>();
    const auto& mp = j.at("min_poly");
    if (!mp.is_array()) throw SchemaError("min_poly is not an array");
    for (const auto& c : mp) r.min_poly.push_back(integer_from_json(c));
    const auto& an = j.at("an");
    if (!an.is_object()) throw SchemaError("an is not an object");
    std::map<std::uint64_t, QVector> coeffs;
    for (const auto& [key, val] : an.items()) {
      if (!val.is_array()) throw SchemaError("an[" + key + "] is not an array");
      QVector v;
      for (const auto& c : val) {
        if (!c.is_string()) throw SchemaError("an[" + key + "] entries must be rational strings");
        try {
          v.push_back(parse_rational(c.get<std::string>()));
        } catch (const Error&) {
          throw SchemaError("an[" + key + "]: bad rational '" + c.get<std::string>() + "'");
        }
      }
      coeffs[parse_index(key)] = std::move(v);
    }
    std::uint64_t expect = 1;
    for (const auto& [n, v] : coeffs) {
      if (n != expect) throw SchemaError("an is missing index " + std::to_string(expect));
      ++expect;
    }
    r.an.emplace_back(static_cast<std::size_t>(std::max(r.degree, 0)), Rational(0));
    for (auto& [n, v] : coeffs) r.an.push_back(std::move(v));
    const auto& al = j.at("atkin_lehner");
    if (!al.is_object()) throw SchemaError("atkin_lehner is not an object");
    for (const auto& [key, val] : al.items()) r.atkin_lehner[parse_index(key)] = val.get<int>();
    r.source = parse_source(j.at("source").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("type error: ") + e.what());
  }
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataUnavailable("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& text) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, p);
}

}  // namespace

void validate_record(NewformRecord& r) {
  if (r.level < 1 || !is_squarefree(r.level)) throw SchemaError("level must be a square-free positive integer");
  if (r.weight < 2 || r.weight % 2 != 0) throw SchemaError("weight must be even and >= 2");
  if (r.min_poly.empty() || !zpoly::is_monic(r.min_poly)) throw SchemaError("min_poly must be monic");
  if (poly::deg(r.min_poly) != r.degree || r.degree < 1) throw SchemaError("degree does not match min_poly");
  if (r.an.size() < 2) throw SchemaError("an must contain a_1");
  for (std::size_t n = 0; n < r.an.size(); ++n)
    if (r.an[n].size() != static_cast<std::size_t>(r.degree))
      throw SchemaError("an[" + std::to_string(n) + "] has the wrong number of coordinates");
  QVector one(static_cast<std::size_t>(r.degree), Rational(0));
  one[0] = 1;
  if (r.an[1] != one) throw SchemaError("a_1 must equal 1");
  for (const auto& [p, s] : r.atkin_lehner) {
    if (!is_prime(p) || r.level % p != 0) throw SchemaError("atkin_lehner key " + std::to_string(p) + " is not a prime divisor of the level");
    if (s != 1 && s != -1) throw SchemaError("atkin_lehner values must be +1 or -1");
  }
  r.usable = r.truncation() >= sturm_bound(r.weight, r.level);
}

std::string export_records(const std::vector<NewformRecord>& records) {
  ojson arr = ojson::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  return arr.dump(2) + "\n";
}

FixtureLoad parse_records(const std::string& text) {
  FixtureLoad out;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return out;
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw SchemaError("fixture must be a JSON array of records");
  for (std::size_t i = 0; i < j.size(); ++i) {
    try {
      NewformRecord r = record_from_json(j[i]);
      validate_record(r);
      out.records.push_back(std::move(r));
    } catch (const Error& e) {
      out.rejected.push_back("record " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

FixtureLoad load_fixture(const std::string& path) { return parse_records(read_file(path)); }

std::string fixture_filename(std::uint64_t level, int weight) {
  return "N_" + std::to_string(level) + "_k_" + std::to_string(weight) + ".json";
}

StoreConfig load_store_config(const std::string& path) {
  StoreConfig cfg;
  ojson j;
  try {
    j = ojson::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (j.contains("fixture_dir")) cfg.fixture_dir = j["fixture_dir"].get<std::string>();
    if (j.contains("cache_dir")) cfg.cache_dir = j["cache_dir"].get<std::string>();
    if (j.contains("endpoint")) cfg.endpoint = j["endpoint"].get<std::string>();
    if (j.contains("offline")) cfg.offline = j["offline"].get<bool>();
    if (j.contains("max_attempts")) cfg.max_attempts = j["max_attempts"].get<int>();
    if (j.contains("backoff_ms")) cfg.backoff_ms = j["backoff_ms"].get<int>();
    if (j.contains("timeout_s")) cfg.timeout_s = j["timeout_s"].get<int>();
    if (j.contains("local_max_level")) cfg.local_max_level = j["local_max_level"].get<std::uint64_t>();
    if (j.contains("remote_fields"))
      for (const auto& [k, v] : j["remote_fields"].items()) cfg.remote_fields[k] = v.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
  apply_environment(cfg);
  return cfg;
}

void apply_environment(StoreConfig& cfg) {
  if (const char* url = std::getenv("EISCONG_REMOTE_URL"); url && *url) cfg.endpoint = url;
}

long local_truncation(std::uint64_t N) { return std::max(2L, 2 * sturm_bound(2, N)); }

NewformStore::NewformStore(StoreConfig cfg) : cfg_(std::move(cfg)) {}

std::vector<NewformRecord> NewformStore::fetch_remote(std::uint64_t N, int k) {
  fs::path cache_path;
  if (!cfg_.cache_dir.empty()) {
    cache_path = fs::path(cfg_.cache_dir) / fixture_filename(N, k);
    std::error_code ec;
    if (fs::exists(cache_path, ec)) {
      FixtureLoad l = load_fixture(cache_path.string());
      if (!l.rejected.empty()) throw SchemaError("corrupt cache entry " + cache_path.string() + ": " + l.rejected[0]);
      return l.records;
    }
  }
  if (cfg_.offline) throw DataUnavailable("offline and no cached records for level " + std::to_string(N) + ", weight " + std::to_string(k));
  if (cfg_.endpoint.empty()) throw DataUnavailable("no remote endpoint configured");

  std::string url = cfg_.endpoint;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw InvalidArgument("endpoint must start with http:// or https://");
  auto path_start = url.find('/', scheme_end + 3);
  std::string host = path_start == std::string::npos ? url : url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url.rfind("https://", 0) == 0) throw DataUnavailable("https endpoints need a build with OpenSSL");
#endif
  std::string query = path + (path.find('?') == std::string::npos ? "?" : "&") + "level=" + std::to_string(N) +
                      "&weight=" + std::to_string(k);

  std::string body;
  std::string last_error = "no attempt made";
  int delay = cfg_.backoff_ms;
  bool ok = false;
  for (int attempt = 0; attempt < std::max(1, cfg_.max_attempts); ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
      delay *= 2;
    }
    ++requests_;
    httplib::Client cli(host);
    cli.set_connection_timeout(cfg_.timeout_s, 0);
    cli.set_read_timeout(cfg_.timeout_s, 0);
    auto res = cli.Get(query);
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) {
      body = res->body;
      ok = true;
      break;
    }
    last_error = "HTTP status " + std::to_string(res->status);
    if (res->status >= 400 && res->status < 500) break;  // not transient
  }
  if (!ok) throw DataUnavailable("remote source: " + last_error);

  auto field = [&](const std::string& name) {
    auto it = cfg_.remote_fields.find(name);
    return it == cfg_.remote_fields.end() ? name : it->second;
  };
  ojson payload;
  try {
    payload = ojson::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("remote payload is not JSON: ") + e.what());
  }
  if (payload.is_object() && payload.contains(field("records"))) payload = payload[field("records")];
  if (!payload.is_array()) throw SchemaError("remote payload is not a list of records");
  std::vector<NewformRecord> out;
  for (const auto& item : payload) {
    if (!item.is_object()) throw SchemaError("remote record is not an object");
    ojson rec;
    for (const char* key : {"level", "weight", "orbit_label", "degree", "min_poly", "an", "atkin_lehner"}) {
      std::string remote = field(key);
      if (!item.contains(remote)) throw SchemaError("remote record lacks field '" + remote + "'");
      rec[key] = item[remote];
    }
    rec["source"] = "remote";
    NewformRecord r = record_from_json(rec);
    validate_record(r);
    if (r.level != N || r.weight != k) throw SchemaError("remote record has the wrong level or weight");
    out.push_back(std::move(r));
  }
  if (!cache_path.empty()) {
    std::lock_guard<std::mutex> lock(cache_mu_);
    write_file_atomic(cache_path.string(), export_records(out));
  }
  return out;
}

std::vector<NewformRecord> NewformStore::compute_local(std::uint64_t N, long B) {
  {
    std::lock_guard<std::mutex> lock(local_mu_);
    auto it = local_.find(N);
    if (it != local_.end() && !it->second->empty() && it->second->front().truncation() >= B) {
      std::vector<NewformRecord> out = *it->second;
      for (auto& r : out) r.an.resize(static_cast<std::size_t>(B) + 1);
      return out;
    }
    if (it != local_.end() && it->second->empty()) return {};
  }
  auto recs = std::make_shared<std::vector<NewformRecord>>();
  for (const auto& o : newform_orbits(*build_cuspidal_new(N, 1), B)) {
    NewformRecord r = record_from_orbit(o);
    validate_record(r);
    recs->push_back(std::move(r));
  }
  std::lock_guard<std::mutex> lock(local_mu_);
  auto& slot = local_[N];
  if (!slot || slot->empty() || slot->front().truncation() < B) slot = recs;
  return *recs;
}

std::vector<NewformRecord> NewformStore::lookup(std::uint64_t N, int k) {
  if (k == 2 && N > 1 && N <= cfg_.local_max_level && is_squarefree(N)) return compute_local(N, local_truncation(N));
  if (!cfg_.fixture_dir.empty()) {
    fs::path p = fs::path(cfg_.fixture_dir) / fixture_filename(N, k);
    std::error_code ec;
    if (fs::exists(p, ec)) return load_fixture(p.string()).records;
  }
  if (!cfg_.cache_dir.empty() || !cfg_.endpoint.empty()) return fetch_remote(N, k);
  throw DataUnavailable("no source for level " + std::to_string(N) + ", weight " + std::to_string(k));
}

}  // namespace eiscong

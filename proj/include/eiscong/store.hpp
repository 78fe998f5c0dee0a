#pragma once

// Newform records: JSON fixtures, an HTTP source with an on-disk cache, and
// local computation for weight 2, behind one lookup.

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "eiscong/linalg.hpp"
#include "eiscong/modsym.hpp"
#include "eiscong/poly.hpp"

namespace eiscong {

enum class RecordSource { LocalComputation, Fixture, Remote };
std::string to_string(RecordSource s);
RecordSource parse_source(const std::string& s);  // throws SchemaError

struct NewformRecord {
  std::uint64_t level = 0;
  int weight = 2;
  std::string orbit_label;
  int degree = 0;
  ZPoly min_poly;
  // an[n] for 1 <= n <= truncation, coordinates over the power basis of a
  // root of min_poly; an[0] is the zero vector.
  std::vector<QVector> an;
  std::map<std::uint64_t, int> atkin_lehner;
  RecordSource source = RecordSource::Fixture;
  // Set on load: false when the truncation is below the Sturm bound.
  bool usable = true;

  long truncation() const { return static_cast<long>(an.size()) - 1; }
  friend bool operator==(const NewformRecord&, const NewformRecord&) = default;
};

NewformRecord record_from_orbit(const NewformOrbit& o);

// Canonical text of a record list: a JSON array, two-space indentation,
// keys in schema order, trailing newline. Empty list -> "[]\n".
std::string export_records(const std::vector<NewformRecord>& records);

struct FixtureLoad {
  std::vector<NewformRecord> records;
  std::vector<std::string> rejected;  // one diagnostic per rejected record
};
// Parses and validates record by record. An empty (or whitespace-only) text
// is an empty list; text that is not a JSON array throws SchemaError.
FixtureLoad parse_records(const std::string& text);
FixtureLoad load_fixture(const std::string& path);
// Throws SchemaError describing the first violated invariant.
void validate_record(NewformRecord& r);

std::string fixture_filename(std::uint64_t level, int weight);  // N_{level}_k_{weight}.json

struct StoreConfig {
  std::string fixture_dir;            // empty: no fixtures
  std::string cache_dir;              // empty: no remote cache
  std::string endpoint;               // http://host[:port]/path, empty: no remote
  bool offline = false;
  int max_attempts = 3;
  int backoff_ms = 250;               // doubled after each failed attempt
  int timeout_s = 10;
  std::uint64_t local_max_level = 1000;  // weight-2 levels computed locally
  // Remote field name for each schema field (identity by default).
  std::map<std::string, std::string> remote_fields;
};

// Reads a JSON config file (keys as in StoreConfig). The environment
// variable EISCONG_REMOTE_URL, when set, overrides the endpoint.
StoreConfig load_store_config(const std::string& path);
void apply_environment(StoreConfig& cfg);

class NewformStore {
 public:
  explicit NewformStore(StoreConfig cfg);

  const StoreConfig& config() const { return cfg_; }

  // Records from GET endpoint?level=N&weight=k, cached under cache_dir.
  // Cache hits make no request. Throws DataUnavailable when offline with a
  // cold cache or when every attempt fails; SchemaError on malformed payloads.
  std::vector<NewformRecord> fetch_remote(std::uint64_t N, int k);

  // Local computation (k = 2, square-free N up to local_max_level) first,
  // then the fixture file, then the remote source through its cache. Throws
  // DataUnavailable when no source can answer.
  std::vector<NewformRecord> lookup(std::uint64_t N, int k);

  // Weight-2 records computed from modular symbols with a_n for n <= B.
  std::vector<NewformRecord> compute_local(std::uint64_t N, long B);

  std::size_t request_count() const { return requests_.load(); }

 private:
  StoreConfig cfg_;
  std::atomic<std::size_t> requests_{0};
  std::mutex cache_mu_;  // serializes cache writes
  std::mutex local_mu_;
  std::map<std::uint64_t, std::shared_ptr<std::vector<NewformRecord>>> local_;
};

// Truncation used for local computation: twice the Sturm bound, so the
// engine can verify the congruence beyond the bound.
long local_truncation(std::uint64_t N);

}  // namespace eiscong

#pragma once

// Command-line front end: eis, search, reproduce, plot-degree-growth.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace eiscong {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitDataUnavailable = 2, kExitMismatch = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "26" or "11..19"; throws InvalidArgument.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s);
// "2", "2,4,6" or "2..6"; throws InvalidArgument.
std::vector<std::uint64_t> parse_list(const std::string& s);

struct DegreePoint {
  int threshold = 0;  // d >= threshold
  std::uint64_t N = 0;
  int d = 0;
};
// For each threshold 10, 20, ... the row with least N whose degree reaches it
// (largest d among ties), until no row qualifies. Rows with N^- > 1 are
// ignored unless all_labels is set.
std::vector<DegreePoint> degree_growth_points(const std::string& csv_text, bool all_labels);

}  // namespace eiscong

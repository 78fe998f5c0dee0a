#pragma once

// Congruences between newforms and Eisenstein eigenforms modulo powers of
// prime ideals: candidate primes, the search itself, the auxiliary exponent
// m and the bounds every result must satisfy.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eiscong/numberfield.hpp"
#include "eiscong/qseries.hpp"
#include "eiscong/store.hpp"

namespace eiscong {

struct CandidatePrime {
  std::uint64_t ell = 0;
  std::vector<int> cases;     // which of the rules (1), (2), (3) admitted ell
  bool divides_level = false;
};

struct CandidateReport {
  EisensteinLabel label;
  std::vector<CandidatePrime> primes;  // increasing ell
  std::vector<std::uint64_t> list() const;
};

// (1) N^- = 1: primes of -(B_k/2k) prod (1 - p_i) and of
//     -(B_k/2k) prod (1 - p_i^(k-1)) (numerators and denominators);
// (2) k = 2, N^- > 1: primes of gcd{1 - p^2 : p | N^-};
// (3) k > 2, N^- > 1: primes of gcd({1 - p^k : p | N^-} u {1 - p^(k-2) : p | N^+});
// always together with the primes dividing N.
CandidateReport candidate_primes(const EisensteinLabel& label);

// A newform record with its coefficient field instantiated.
struct PreparedForm {
  NewformRecord record;
  std::size_t index = 0;  // position in the lookup result
  std::shared_ptr<const NumberField> field;
  std::vector<FieldElement> an;
  std::string fingerprint;  // traces of a_p for the first primes, "2:t2,3:t3,.."

  // a_p for p | N from the Atkin-Lehner sign when p exceeds the truncation.
  FieldElement ap_bad(std::uint64_t p) const;
};
PreparedForm prepare_form(const NewformRecord& r, std::size_t index = 0);

struct CongruenceResult {
  std::uint64_t N = 0, n_minus = 1, n_plus = 1;
  int k = 2;
  std::uint64_t ell = 0;
  int lambda_label = 0;
  long r = 0;
  int e = 0, f = 0, d = 0;
  Valuation m;         // difference in ell^m O_f
  Valuation m_single;  // floor(ord_lambda / e) at the ideal under test only
  std::string form_label;
  std::size_t form_index = 0;
  std::string fingerprint;

  EisensteinLabel label() const { return {k, n_minus, n_plus}; }
};

struct SkippedPair {
  std::string form_label;
  std::uint64_t ell = 0;
  std::string reason;
};

struct SearchOutcome {
  std::vector<CongruenceResult> results;
  std::vector<SkippedPair> skipped;
  std::size_t pairs_tested = 0;  // (form, lambda) pairs examined
};

// Steps 1-7 for one label and one prime ell on prepared forms of level N.
SearchOutcome search_forms(const std::vector<PreparedForm>& forms, const EisensteinLabel& label, std::uint64_t ell);
// Same with the forms taken from the store. Throws DataUnavailable when the
// store has no data for (N, k).
SearchOutcome search(NewformStore& store, int k, std::uint64_t N, const EisensteinLabel& label, std::uint64_t ell);

// r_lambda at the indices n <= B (primes q <= B plus the a_0 condition).
Valuation congruence_exponent(const PreparedForm& form, const EisensteinLabel& label, const PrimeIdealData& lambda,
                              long B);
// True when a_n(f) = a_n(E) mod lambda^r for every n in [from, to] (prime n
// only when primes_only), and at n = 0 when from is 0.
bool congruence_holds(const PreparedForm& form, const EisensteinLabel& label, const PrimeIdealData& lambda, long r,
                      long from, long to, bool primes_only);

struct MValue {
  Valuation m;
  Valuation m_single;
};
// Differences a_p(f) - a_p(E) for p | N and a_0(f) - a_0(E).
MValue m_value(const PreparedForm& form, const EisensteinLabel& label, std::uint64_t ell,
               const PrimeIdealData* lambda = nullptr);

struct BoundCheck {
  bool holds = false;
  Valuation bound;
};
// r <= e * v_ell(-(B_k/2k) prod (1 - p_i^(k-1))), i.e. e * v_ell(a_0(E)), which is
// the printed prod (1 - p_i) form at k = 2. Throws InapplicableBound when N^- > 1.
BoundCheck check_bound_theorem(const CongruenceResult& res);

struct CorollaryCheck {
  bool applicable = false;
  std::string reason;          // why not applicable
  bool holds = false;
  Valuation bound;
  bool side_conclusion = false;  // ell differs from every p | N^+
  // The side conclusion rests on 1 - p^(k-2) lying in lambda, which says
  // nothing at k = 2, so it is only implied for k > 2.
  bool side_conclusion_implied = false;
};
// r <= min(min_{p|N^+} ord(1 - p^(k-2)), min_{p|N^-} ord(1 - p^k)), applicable
// when a_0(E) = 0 and ell does not divide N^-.
CorollaryCheck check_bound_corollary(const CongruenceResult& res);

enum class RationalVerdict { PowerAtMostFive, SevenAt13And2, Violation, NotApplicable };
std::string to_string(RationalVerdict v);
RationalVerdict classify_rational_weight2(const CongruenceResult& res);

// ---------------------------------------------------------------------------
// Output

std::string csv_header();  // n,nm,np,k,l,m,fnumber,idnumber,r,e,f,d
std::string to_csv_row(const CongruenceResult& res);
std::string to_json(const CongruenceResult& res);
bool result_less(const CongruenceResult& a, const CongruenceResult& b);

// ---------------------------------------------------------------------------
// Batch driver

struct ScanOptions {
  std::vector<int> weights{2};
  std::vector<std::uint64_t> levels;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> label;  // (N^-, N^+)
  std::vector<std::uint64_t> ells;  // empty: all candidates
  unsigned jobs = 1;
};

struct ScanSummary {
  std::size_t tested = 0;      // r >= 0
  std::size_t positive = 0;    // r > 0
  std::size_t me_equal = 0;    // m*e = r > 0
  std::size_t me_greater = 0;  // m*e > r > 0
};

struct ScanReport {
  std::vector<CongruenceResult> results;  // sorted by result_less
  std::vector<std::string> skipped;       // sorted diagnostics
  ScanSummary summary;
};

ScanReport run_scan(NewformStore& store, const ScanOptions& opt);

}  // namespace eiscong

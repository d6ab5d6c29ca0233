#pragma once

#include "ait/bitstring.hpp"
#include "ait/enumeration.hpp"
#include "ait/measures.hpp"
#include "ait/report.hpp"
#include "ait/staged.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ait {

// The conditional-deficiency identity. Per x the two quantities
// I(x;H) = K(x) - K(x|H) and d_m(x|H) = ceil(-log2 m(x)) - K(x|H) are
// computed from the two tables; their difference must equal
// ceil(-log2 m(x)) - K(x) by pure algebra (hard assert) and the coding
// lemma forces it nonpositive at any finite stage (hard assert).
// Requires finite complexity on X in both tables.
ConservationReport check_prop1(const std::vector<BitString>& X,
                               const EnumerationTable& plain,
                               const EnumerationTable& with_oracle);

// Deficiency conservation under a total transformation. Per x the
// report carries d_Bp(B(x)), d_p(x), I(x;H) and the gap
// d_Bp(B(x)) - d_p(x) - I(x;H); the gap is reported against a slack of
// description costs plus the machine constant bound, never asserted.
// Hard asserts: the attached test has p-expectation at most 1 under the
// table measure, and the image bookkeeping conserves mass exactly.
ConservationReport check_thm1(const TotalFunction& B, const DiscreteSemiMeasure& p,
                              const std::vector<BitString>& X,
                              const EnumerationTable& plain,
                              const EnumerationTable& with_oracle,
                              std::optional<long> slack_override = std::nullopt);

// The staged variant freezes B at the given stage first.
ConservationReport check_thm1(const StagedFunction& B, int stage,
                              const DiscreteSemiMeasure& p,
                              const std::vector<BitString>& X,
                              const EnumerationTable& plain,
                              const EnumerationTable& with_oracle,
                              std::optional<long> slack_override = std::nullopt);

// Mutual-information conservation over pairs. Row pairs need finite
// complexities; the calibrated pair test is built over test_domain and
// its m-weighted sum must come out exactly 1 (hard assert).
ConservationReport check_thm3(const TotalFunction& B,
                              const std::vector<std::pair<BitString, BitString>>& pairs,
                              const std::vector<std::pair<BitString, BitString>>& test_domain,
                              const EnumerationTable& plain,
                              const EnumerationTable& with_oracle);

// Oracle-information conservation under a total function. Per x the gap
// is I(f(x);H) - I(x;H); the calibrated companion semi-measure over X
// must sum to exactly 1 (hard assert).
ConservationReport check_thm4(const TotalFunction& f, const std::vector<BitString>& X,
                              const EnumerationTable& plain,
                              const EnumerationTable& with_oracle);

// The exotic-string pipeline rendered in the common report format.
// Hard asserts: mass conservation of the image and agreement of the two
// deficiency-difference routes. The slack band on the measured
// difference is a summary flag, never an assert.
ConservationReport thm2_report(const Thm2Result& r);

} // namespace ait

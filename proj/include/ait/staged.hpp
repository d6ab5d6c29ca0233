#pragma once

#include "ait/bitstring.hpp"
#include "ait/enumeration.hpp"
#include "ait/measures.hpp"

#include <functional>
#include <optional>
#include <string>

namespace ait {

// A limit-computed function: an evaluator indexed by stage, carrying
// the contract that for each input the value eventually stops changing.
// The contract is not machine-checkable; eval_staged probes it through
// a stability window instead.
struct StagedFunction {
    std::function<BitString(const BitString&, int)> eval;  // (x, stage)
    std::string label;
    int description_cost = 0;
};

struct StagedValue {
    BitString value;  // evaluator(x, max_stage)
    bool stable;      // constant over the final `window` stages
};

// Evaluate at the last stage and probe stability: stable means the
// value did not change over stages max_stage - window + 1 .. max_stage.
// Requires max_stage >= window >= 1.
StagedValue eval_staged(const StagedFunction& B, const BitString& x, int max_stage,
                        int window);

// Freeze a staged function at one stage.
TotalFunction at_stage(const StagedFunction& B, int stage);

// Wrap a stage-independent function as a staged one.
StagedFunction staged_constant(const TotalFunction& f);

// The exotic transformation built from the machine's own halting mass.
// At stage s, with w = omega_bits_by_stage(s) of length c, inputs of
// length b + c split three ways on the numeric comparison of their tail
// against w: keep x below w, truncate to the head on w itself, drop to
// the empty string above w. All other lengths map to the empty string.
// Throws Error(BadLength) when a stage delivers bits of length != c.
StagedFunction thm2_B(int b, int c, std::function<BitString(int)> omega_bits_by_stage);

// One row short of a full conservation report: everything the exotic
// pipeline measures, plus the exact bookkeeping the harness asserts.
struct Thm2Result {
    int b = 0;
    int c = 0;
    BitString omega_bits;        // Omega_c of the plain table, final stage
    bool omega_converged = false;
    BitString x;                 // 0^b Omega_c
    bool stable_B = false;       // thm2_B value of x constant over final stages

    std::optional<long> k_x;           // K_t(x)
    std::optional<long> k_head;        // K_t(x restricted to b bits)
    std::optional<long> d_p;           // deficiency of x under uniform_n(b+c)
    std::optional<long> d_Bp;          // deficiency of B(x) under the image
    std::optional<long> info_oracle;   // I(x; H_t)
    std::optional<long> measured_diff; // d_Bp - d_p

    long predicted_diff = 0;   // the conservation target c
    long slack = 0;            // 2 ceil(log2 bc) + 8 unless overridden
    bool within_slack = false; // only meaningful when measured_diff holds

    Rat lost_mass;          // image mass dropped to the empty string
    Rat expected_lost_mass; // (count of tails above omega) / 2^(b+c)
    bool mass_conserved = false;  // image total + lost == source total
    bool identity_holds = false;  // the two deficiency-difference routes agree
};

// Run the full exotic-string experiment against a plain table and an
// oracle table of equal (max_len, max_steps). Stages are the table
// filtered to quarter, half and full step budget. Requires b >= 1,
// c >= 1 and b + c <= 20.
Thm2Result thm2_pipeline(int b, int c, const EnumerationTable& table_plain,
                         const EnumerationTable& table_with_oracle,
                         std::optional<long> slack_override = std::nullopt);

// The default slack for "within a logarithmic band" reports.
long default_slack(int b, int c);

} // namespace ait

#pragma once

#include "ait/bitstring.hpp"

#include <string>

namespace ait {

// The fixed reference machine. Its complete operational semantics live
// in docs/machine.txt; that text is embedded in the binary and hashed
// into version_id, so two builds agree on version_id exactly when they
// agree on the semantics document.
struct MachineSpec {
    // First 8 hex digits of the 64-bit FNV-1a hash of the semantics text.
    static const std::string& version_id();
    // The embedded semantics text itself.
    static const std::string& semantics();
};

enum class Outcome {
    Halted,           // consumed bits form a complete program
    BudgetExhausted,  // step budget ran out
    RanOffProgram     // a bit beyond the supplied program was needed
};

const char* to_string(Outcome o);

struct RunResult {
    Outcome outcome = Outcome::RanOffProgram;
    BitString output;
    std::size_t bits_consumed = 0;
    long steps = 0;
    // Set only by cycle detection: the machine revisited a complete
    // configuration, so no extension of the budget can make it halt.
    // The outcome is still reported as BudgetExhausted.
    bool certified_nonhalting = false;
};

struct RunOptions {
    // Revisiting a configuration (pc, B, F, clamped aux cursor) proves
    // divergence because output is write-only. Enumeration turns this
    // on to prune; the default run semantics stay budget-faithful.
    bool detect_cycles = false;
};

// Execute program with the given aux tape and step budget.
// Deterministic; monotone in the budget (a halted run stays identical
// under any larger budget).
RunResult run(const BitString& program, const BitString& aux, long budget,
              const RunOptions& options = {});

// Convenience: empty aux tape.
RunResult run(const BitString& program, long budget);

struct MonotoneRun {
    BitString input_consumed;  // prefix of the input actually read
    BitString output;
    long steps = 0;
};

// Stream-transducer semantics: code is a fixed complete program, input
// feeds the aux tape, and reading past the supplied input suspends the
// run. Output is monotone in both the input prefix and the budget.
MonotoneRun run_monotone(const BitString& code, const BitString& input, long budget);

} // namespace ait

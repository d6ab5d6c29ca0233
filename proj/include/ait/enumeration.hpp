#pragma once

#include "ait/bitstring.hpp"
#include "ait/machine.hpp"
#include "ait/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ait {

// A resource bound for exhaustive enumeration. Two budgets match only
// when all three fields are equal; tables built under different budgets
// never mix silently.
struct Budget {
    int max_len = 0;       // programs of length 0..max_len bits
    long max_steps = 0;    // per-run step budget
    BitString aux;         // shared aux tape, empty for none

    bool operator==(const Budget&) const = default;
    std::string display() const;
};

// One halting run: an element of the enumerated prefix-free domain.
struct Record {
    BitString program;   // bits_consumed == program.size() always
    BitString output;
    long steps = 0;      // steps of the halting run
};

// Hard cap on table size; exceeding it throws Error(ResourceLimit)
// rather than silently truncating.
inline constexpr std::size_t kMaxRecords = std::size_t(1) << 24;

// The complete set of effective programs within a budget, with the
// derived complexity and mass indexes. Immutable once built.
class EnumerationTable {
public:
    struct OutputInfo {
        int min_len = 0;  // length of the shortest program
        Rat mass = 0;     // sum of 2^-len over programs printing this output
    };
    using OutputIndex = std::map<BitString, OutputInfo, CanonicalLess>;

    EnumerationTable(std::string version_id, Budget budget, std::vector<Record> records);

    const std::string& version_id() const { return version_id_; }
    const Budget& budget() const { return budget_; }
    // Records in canonical order of program.
    const std::vector<Record>& records() const { return records_; }
    const OutputIndex& outputs() const { return outputs_; }

    // Sum of 2^-len over all effective programs; at most 1 exactly.
    const Rat& kraft_sum() const { return kraft_; }

    // Restrict to runs that halted within max_steps. The result equals
    // the table that enumeration at the smaller budget would produce.
    EnumerationTable filtered_by_steps(long max_steps) const;

    bool contains_program(const BitString& program) const;

private:
    std::string version_id_;
    Budget budget_;
    std::vector<Record> records_;
    OutputIndex outputs_;
    Rat kraft_;
};

// Run every program of length up to budget.max_len for budget.max_steps
// steps and collect the halting runs. The search walks the program
// prefix tree, descending only through runs that consumed every supplied
// bit, so the result equals the brute-force sweep at a fraction of the
// cost.
EnumerationTable enumerate(const Budget& budget);

// K_t(x): length of the shortest program printing x within the budget;
// nullopt is the Infinite value, returned when no program prints x.
std::optional<long> K_approx(const BitString& x, const EnumerationTable& table);

// m_t(x): total mass 2^-len of programs printing x; zero when none do.
Rat m_approx(const BitString& x, const EnumerationTable& table);

// Omega_t: mass of programs with nonempty output.
Rat omega_approx(const EnumerationTable& table);

struct OmegaPrefix {
    BitString bits;   // first c binary digits of Omega_t after the point
    bool converged;   // same digits from the table at half the step budget
};

// First c digits of omega_approx, with a stability probe. Requires c >= 1.
OmegaPrefix omega_prefix(int c, const EnumerationTable& table);

// First prefix_len bits of the halting indicator: bit i tells whether
// the i-th string in canonical order is an effective program of the
// table. This is the oracle prefix H_t used as an aux tape.
BitString halting_oracle(const EnumerationTable& table, int prefix_len);

// K_t of the canonical pair code of (x, y).
std::optional<long> joint_K(const BitString& x, const BitString& y,
                            const EnumerationTable& table);

// I_t(x : y) = K(x) + K(y) - K(x, y); nullopt if any term is Infinite.
std::optional<long> mutual_info(const BitString& x, const BitString& y,
                                const EnumerationTable& table);

// I_t(x ; H) = K_plain(x) - K_oracle(x), the information the oracle
// tape saves on x. The tables must share version_id, max_len and
// max_steps and differ only in aux.
std::optional<long> info_with_oracle(const BitString& x,
                                     const EnumerationTable& table_plain,
                                     const EnumerationTable& table_with_oracle);

// Cache files: a fixed header line followed by one line per record in
// canonical order. Deterministic bytes for a given (version, budget).
void write_cache(const EnumerationTable& table, const std::string& path);
EnumerationTable read_cache(const std::string& path);

void write_cache_stream(const EnumerationTable& table, std::ostream& os);
EnumerationTable read_cache_stream(std::istream& is, const std::string& name);

} // namespace ait

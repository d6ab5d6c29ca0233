#pragma once

#include "ait/bitstring.hpp"
#include "ait/enumeration.hpp"
#include "ait/rational.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ait {

// A total map on bit strings; the empty result is the undefined value.
// description_cost is the hand-assigned integer surrogate for the
// constant this function contributes to slack bounds.
struct TotalFunction {
    std::function<BitString(const BitString&)> eval;
    std::string label;
    int description_cost = 0;
};

// A discrete semi-measure: positive mass on finitely many nonempty
// strings, with any mass on the empty string tracked separately, and
// the nonempty total at most 1.
class DiscreteSemiMeasure {
public:
    using Entries = std::map<BitString, Rat, CanonicalLess>;

    // The empty measure: no support, no mass.
    DiscreteSemiMeasure() : bottom_mass_(0), mass_(0), label_("empty"),
                            description_cost_(0) {}

    DiscreteSemiMeasure(Entries entries, Rat bottom_mass, std::string label,
                        int description_cost);

    const Rat& at(const BitString& x) const;  // zero off the support
    const Entries& entries() const { return entries_; }
    const Rat& bottom_mass() const { return bottom_mass_; }
    // Mass over nonempty strings; the quantity bounded by 1.
    const Rat& mass() const { return mass_; }
    // mass() plus the bottom mass; what image bookkeeping conserves.
    Rat total_mass() const { return mass_ + bottom_mass_; }

    const std::string& label() const { return label_; }
    int description_cost() const { return description_cost_; }

    // string numerator denominator, one line per support element, in
    // canonical order; bottom mass last under the token "eps".
    void write(std::ostream& os) const;

private:
    Entries entries_;
    Rat bottom_mass_;
    Rat mass_;
    std::string label_;
    int description_cost_;
};

// Uniform distribution on strings of length exactly n, 1 <= n <= 24.
DiscreteSemiMeasure uniform_n(int n);
// Geometric over lengths 1..cutoff: mass 2^-len split uniformly within
// each length; total mass 1 - 2^-cutoff.
DiscreteSemiMeasure geometric_measure(int cutoff);
// Point mass on one nonempty string.
DiscreteSemiMeasure point_measure(const BitString& x);

// The semi-measure x -> m_t(x) of a table; empty-output program mass
// becomes bottom mass.
DiscreteSemiMeasure measure_from_table(const EnumerationTable& table);

// A nonnegative function on nonempty strings, zero off its finite support.
class DiscreteTest {
public:
    using Entries = std::map<BitString, Rat, CanonicalLess>;

    DiscreteTest(Entries entries, std::string label);

    const Rat& at(const BitString& x) const;
    const Entries& entries() const { return entries_; }
    const std::string& label() const { return label_; }

    void write(std::ostream& os) const;

private:
    Entries entries_;
    std::string label_;
};

struct ImageResult {
    DiscreteSemiMeasure measure;
    // Mass of support points sent to the undefined value. Conservation:
    // measure.total_mass() + lost_mass equals the source total exactly.
    Rat lost_mass;
};

// Pushforward of p along f. Mass on points with empty image lands in
// lost_mass; bottom mass of the source stays bottom mass.
ImageResult image_measure(const TotalFunction& f, const DiscreteSemiMeasure& p);

// d_p(x) = ceil(-log2 p(x)) - K_t(x); the empty string has deficiency 0
// by convention. Throws Error(ZeroMass) when p(x) = 0 and
// Error(NoProgram) when the table has no program for x.
long deficiency(const DiscreteSemiMeasure& p, const BitString& x,
                const EnumerationTable& table);

struct TestCheck {
    Rat sum;    // exact value of the p-weighted sum of t
    bool pass;  // sum <= 1
};

// The defining test inequality: the p-expectation of t over the domain
// is at most 1. The domain must cover the support of p.
TestCheck verify_test(const DiscreteSemiMeasure& p, const DiscreteTest& t,
                      const std::vector<BitString>& domain);

// The conserved test attached to a transformation B and source measure
// p: t(x) = m(B(x)) p(x) / (m(x) Bp(B(x))), zero where B(x) is the
// empty string. Entries with a vanishing denominator get value zero and
// are flagged rather than thrown: the telescoping sum stays exact.
struct Thm1Test {
    DiscreteTest test;
    ImageResult image;  // Bp, reused by callers
    std::vector<BitString> zero_denominator;
};

Thm1Test thm1_test(const DiscreteSemiMeasure& p, const TotalFunction& B,
                   const EnumerationTable& table);

// Calibrated pair test u(x, y) = c m(B(x), y) m(x) / (m(x, y) m(B(x)))
// over a finite pair domain; c = 1 / (the m(x, y)-weighted sum of the
// uncalibrated values), making the weighted sum exactly 1.
struct Thm3Test {
    std::vector<std::pair<BitString, BitString>> domain;
    std::map<std::pair<BitString, BitString>, Rat, PairCanonicalLess> values;  // calibrated
    Rat calibration;       // the constant c
    Rat uncalibrated_sum;  // what c normalizes away
    std::vector<std::pair<BitString, BitString>> zero_denominator;
};

Thm3Test thm3_test(const TotalFunction& B,
                   const std::vector<std::pair<BitString, BitString>>& domain,
                   const EnumerationTable& table);

// Calibrated semi-measure s(x) = c m_oracle(f(x)) m(x) / m(f(x)) over a
// finite domain, zero where f(x) is empty; c = 1 / (sum of uncalibrated
// values), making s sum to exactly 1 over the domain.
struct Thm4Semimeasure {
    DiscreteSemiMeasure measure;
    Rat calibration;
    Rat uncalibrated_sum;
    std::vector<BitString> zero_denominator;
};

Thm4Semimeasure thm4_semimeasure(const TotalFunction& f,
                                 const EnumerationTable& table_plain,
                                 const EnumerationTable& table_with_oracle,
                                 const std::vector<BitString>& domain);

} // namespace ait

#pragma once

#include "ait/bitstring.hpp"
#include "ait/rational.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ait {

// A superadditive nonnegative function on the depth-bounded binary
// tree: values(x) >= values(x0) + values(x1) at every internal node and
// values(root) <= 1. Equality everywhere makes it a measure. Values are
// stored densely; construction validates the invariants.
class TreeSemiMeasure {
public:
    static constexpr int kMaxDepth = 16;

    // fn is evaluated on every node of length <= depth.
    static TreeSemiMeasure from_fn(int depth,
                                   const std::function<Rat(const BitString&)>& fn,
                                   std::string label, int catalog_index = 0);
    // values in heap layout: index (1 << len) + numeric value of the node.
    static TreeSemiMeasure from_values(int depth, std::vector<Rat> values,
                                       std::string label, int catalog_index = 0);

    int depth() const { return depth_; }
    const std::string& label() const { return label_; }
    int catalog_index() const { return catalog_index_; }

    // Value at a node of length <= depth; Error(DepthMismatch) beyond.
    const Rat& at(const BitString& x) const;
    // Value at x truncated to the working depth.
    const Rat& at_clamped(const BitString& x) const;

    bool superadditive() const;  // recheck, true by construction
    bool is_measure() const;     // equality at every internal node

    // node numerator denominator, breadth first, after a depth header.
    void write(std::ostream& os) const;

private:
    TreeSemiMeasure(int depth, std::vector<Rat> values, std::string label,
                    int catalog_index);
    void validate() const;

    int depth_ = 0;
    std::vector<Rat> values_;
    std::string label_;
    int catalog_index_ = 0;
};

// A monotone nondecreasing nonnegative function on the tree: the
// finite-depth realization of a lower semicontinuous test. The value of
// the test on a sequence is the value at its deepest stored prefix.
class ElementaryTest {
public:
    static ElementaryTest from_fn(int depth,
                                  const std::function<Rat(const BitString&)>& fn,
                                  std::string label);
    static ElementaryTest from_values(int depth, std::vector<Rat> values,
                                      std::string label);

    int depth() const { return depth_; }
    const std::string& label() const { return label_; }

    const Rat& at(const BitString& x) const;
    const Rat& at_clamped(const BitString& x) const;

    // The test scaled by a positive constant factor.
    ElementaryTest scaled(const Rat& factor, const std::string& label) const;

    void write(std::ostream& os) const;

private:
    ElementaryTest(int depth, std::vector<Rat> values, std::string label);
    void validate() const;

    int depth_ = 0;
    std::vector<Rat> values_;
    std::string label_;
};

// A monotone map on strings: eval(p) is a prefix of eval(pq). The
// monotonicity contract is exhaustively checkable to depth_bound.
struct MonotoneMap {
    std::function<BitString(const BitString&)> eval;
    int depth_bound = 0;
    std::string label;
};

// M(x) = sum of 2^-i P_i(x), i the 1-based catalog position.
// Throws Error(DepthMismatch) unless all members share a depth.
TreeSemiMeasure mixture_M(const std::vector<TreeSemiMeasure>& catalog);

struct DeficiencyD {
    Rat ratio;        // exact max over prefixes y of M(y) / P(y)
    long log2_floor;  // floor of log2 of that ratio
};

// D_P(x) against M: the maximum ratio over every prefix of x, the
// empty prefix included. Throws Error(ZeroMass) when P vanishes on a
// prefix.
DeficiencyD deficiency_D(const TreeSemiMeasure& P, const TreeSemiMeasure& M,
                         const BitString& x);

struct RatioCheck {
    int m = 0;
    Rat exceed_mass;                 // exact P-mass of the exceed set
    std::vector<BitString> antichain;  // minimal nodes with ratio > 2^m
    bool pass = false;               // exceed_mass < 2^-m
};

// The probability-bound side of the deficiency test: the minimal nodes
// where M/P exceeds 2^m carry P-mass strictly below 2^-m. P must be a
// measure on the tree; nodes where P vanishes carry no mass and are
// skipped.
RatioCheck ratio_test_check(const TreeSemiMeasure& P, const TreeSemiMeasure& M,
                            int depth, int m);

// The prefix-free set of y with eval(y-) a strict prefix of x and x a
// prefix of eval(y), up to the given input depth. Requires nonempty x.
std::vector<BitString> inverse_set(const MonotoneMap& map, const BitString& x,
                                   int depth);

// The image semi-measure: mu(x) = sum of P(y) over inverse_set(map, x),
// with mu at the root defined as P at the root. Superadditivity of the
// result is validated on construction.
TreeSemiMeasure image_tree_measure(const MonotoneMap& map, const TreeSemiMeasure& P,
                                   int depth);

// (Bt)(y) = t at the image of y, read at its deepest stored prefix.
ElementaryTest pullback_test(const MonotoneMap& map, const ElementaryTest& t,
                             int depth);

struct ThresholdCheck {
    int m = 0;
    Rat exceed_mass;    // exact M-mass of the minimal exceed antichain
    std::vector<BitString> antichain;
    std::size_t antichain_size = 0;
    bool pass = false;  // exceed_mass < 2^-m
};

struct MTestValidation {
    bool pass = false;  // every threshold passed
    int max_m = 0;      // thresholds 0..max_m were checked
    std::vector<ThresholdCheck> checks;
};

// Exact validation that t is an M-test at the working depth: for every
// m from 0 to one past the largest attained power, the minimal nodes
// with t > 2^m carry M-mass strictly below 2^-m.
MTestValidation validate_m_test(const ElementaryTest& t, const TreeSemiMeasure& M);

struct WeightedTest {
    ElementaryTest test;
    long weight_log2;  // weight 2^weight_log2, catalog position i gives -i
};

// log-scale sum of the weighted catalog at x: the exact rational value
// sum_i 2^-i t_i(x), with its log2 floor.
struct InfSum {
    Rat value;
    long log2_floor;
};

InfSum inf_finite(const std::vector<WeightedTest>& catalog, const BitString& x);

struct Thm5Row {
    BitString x;
    Rat sum_at_x;      // inf_finite at x
    Rat sum_at_image;  // inf_finite at the image of x (clamped)
    Rat ratio;         // image over source
    long ratio_log2_floor = 0;
};

struct Thm5Result {
    long domination_log2 = 0;  // k with image-of-M <= 2^k M nodewise
    Rat max_domination_ratio;
    std::vector<MTestValidation> catalog_valid;   // one per test
    std::vector<MTestValidation> pullback_valid;  // scaled by 2^-k
    std::vector<Thm5Row> rows;
    bool hard_pass = false;  // all validations pass
};

// Structural verification of information conservation for continuous
// tests: every catalog test validates, the image of M under the map is
// dominated by 2^k M, and each pullback scaled by 2^-k revalidates.
// Rows report inf_finite at x versus at the image of x.
Thm5Result check_thm5(const MonotoneMap& map, const std::vector<WeightedTest>& catalog,
                      const TreeSemiMeasure& M, const std::vector<BitString>& prefixes);

struct Thm6Row {
    BitString x;
    DeficiencyD d_p;       // D_P(x)
    DeficiencyD d_image;   // D_BP at the image of x (clamped)
    Rat diff_ratio;        // d_image.ratio / d_p.ratio
    long diff_log2_floor = 0;
    InfSum inf;            // inf_finite(x) over the supplied catalog
};

struct Thm6Result {
    ElementaryTest test;   // the conserved test over the working tree
    MTestValidation validation;
    bool covering_pass = false;  // M(S) <= 2^-m sum M(x) t(x), every m
    bool test_is_one = false;    // t identically 1 (identity map)
    std::vector<Thm6Row> rows;
    bool hard_pass = false;
};

// Structural verification for the continuous deficiency: the conserved
// test t(y) = max over prefixes z of P(z) M(image z) / (M(z) BP(image z))
// validates as an M-test at the working depth, with the covering
// inequality replayed exactly. Requires P positive on the working tree.
Thm6Result check_thm6(const MonotoneMap& map, const TreeSemiMeasure& P,
                      const TreeSemiMeasure& M,
                      const std::vector<WeightedTest>& catalog, int row_depth);

} // namespace ait

#include "ait/continuous.hpp"

#include "ait/errors.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace ait {

namespace {

// Dense heap layout over the complete binary tree: a node is addressed
// by (1 << len) + value, the root sits at index 1.
std::size_t node_index(const BitString& x) {
    return (std::size_t(1) << x.size()) + x.to_uint();
}

std::size_t node_index(int len, std::uint64_t v) {
    return (std::size_t(1) << len) + v;
}

BitString node_string(int len, std::uint64_t v) {
    BitString s;
    for (int i = len - 1; i >= 0; --i)
        s.push_back(static_cast<int>((v >> i) & 1));
    return s;
}

std::size_t tree_size(int depth) { return std::size_t(1) << (depth + 1); }

void check_depth(int depth) {
    if (depth < 1 || depth > TreeSemiMeasure::kMaxDepth)
        throw Error(Error::Kind::DepthMismatch,
                    "working depth must lie in 1.." +
                        std::to_string(TreeSemiMeasure::kMaxDepth));
}

} // namespace

TreeSemiMeasure::TreeSemiMeasure(int depth, std::vector<Rat> values,
                                 std::string label, int catalog_index)
    : depth_(depth), values_(std::move(values)), label_(std::move(label)),
      catalog_index_(catalog_index) {
    check_depth(depth_);
    if (values_.size() != tree_size(depth_))
        throw std::invalid_argument("tree value vector has the wrong size for " +
                                    label_);
    validate();
}

void TreeSemiMeasure::validate() const {
    if (sgn(values_[1]) < 0 || values_[1] > 1)
        throw std::invalid_argument("root mass of " + label_ + " must lie in [0,1]");
    for (int len = 0; len < depth_; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
            const Rat& parent = values_[node_index(len, v)];
            const Rat& left = values_[node_index(len + 1, v << 1)];
            const Rat& right = values_[node_index(len + 1, (v << 1) | 1)];
            if (sgn(left) < 0 || sgn(right) < 0)
                throw std::invalid_argument("negative node value in " + label_);
            if (left + right > parent)
                throw std::invalid_argument(
                    "superadditivity fails in " + label_ + " at node " +
                    node_string(len, v).display());
        }
}

TreeSemiMeasure TreeSemiMeasure::from_fn(int depth,
                                         const std::function<Rat(const BitString&)>& fn,
                                         std::string label, int catalog_index) {
    check_depth(depth);
    std::vector<Rat> values(tree_size(depth), Rat(0));
    for (int len = 0; len <= depth; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v)
            values[node_index(len, v)] = fn(node_string(len, v));
    return TreeSemiMeasure(depth, std::move(values), std::move(label), catalog_index);
}

TreeSemiMeasure TreeSemiMeasure::from_values(int depth, std::vector<Rat> values,
                                             std::string label, int catalog_index) {
    return TreeSemiMeasure(depth, std::move(values), std::move(label), catalog_index);
}

const Rat& TreeSemiMeasure::at(const BitString& x) const {
    if (static_cast<int>(x.size()) > depth_)
        throw Error(Error::Kind::DepthMismatch,
                    "node " + x.display() + " lies beyond depth " +
                        std::to_string(depth_) + " of " + label_);
    return values_[node_index(x)];
}

const Rat& TreeSemiMeasure::at_clamped(const BitString& x) const {
    return values_[node_index(x.take(static_cast<std::size_t>(depth_)))];
}

bool TreeSemiMeasure::superadditive() const {
    for (int len = 0; len < depth_; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v)
            if (values_[node_index(len + 1, v << 1)] +
                    values_[node_index(len + 1, (v << 1) | 1)] >
                values_[node_index(len, v)])
                return false;
    return true;
}

bool TreeSemiMeasure::is_measure() const {
    for (int len = 0; len < depth_; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v)
            if (values_[node_index(len + 1, v << 1)] +
                    values_[node_index(len + 1, (v << 1) | 1)] !=
                values_[node_index(len, v)])
                return false;
    return true;
}

void TreeSemiMeasure::write(std::ostream& os) const {
    os << "depth " << depth_ << '\n';
    for (int len = 0; len <= depth_; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
            const Rat& q = values_[node_index(len, v)];
            os << node_string(len, v).display() << ' ' << q.get_num().get_str()
               << ' ' << q.get_den().get_str() << '\n';
        }
}

ElementaryTest::ElementaryTest(int depth, std::vector<Rat> values, std::string label)
    : depth_(depth), values_(std::move(values)), label_(std::move(label)) {
    check_depth(depth_);
    if (values_.size() != tree_size(depth_))
        throw std::invalid_argument("test value vector has the wrong size for " +
                                    label_);
    validate();
}

void ElementaryTest::validate() const {
    if (sgn(values_[1]) < 0)
        throw std::invalid_argument("negative test value in " + label_);
    for (int len = 0; len < depth_; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
            const Rat& parent = values_[node_index(len, v)];
            const Rat& left = values_[node_index(len + 1, v << 1)];
            const Rat& right = values_[node_index(len + 1, (v << 1) | 1)];
            if (left < parent || right < parent)
                throw std::invalid_argument("monotonicity fails in " + label_ +
                                            " below node " +
                                            node_string(len, v).display());
            if (sgn(left) < 0 || sgn(right) < 0)
                throw std::invalid_argument("negative test value in " + label_);
        }
}

ElementaryTest ElementaryTest::from_fn(int depth,
                                       const std::function<Rat(const BitString&)>& fn,
                                       std::string label) {
    check_depth(depth);
    std::vector<Rat> values(tree_size(depth), Rat(0));
    for (int len = 0; len <= depth; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v)
            values[node_index(len, v)] = fn(node_string(len, v));
    return ElementaryTest(depth, std::move(values), std::move(label));
}

ElementaryTest ElementaryTest::from_values(int depth, std::vector<Rat> values,
                                           std::string label) {
    return ElementaryTest(depth, std::move(values), std::move(label));
}

const Rat& ElementaryTest::at(const BitString& x) const {
    if (static_cast<int>(x.size()) > depth_)
        throw Error(Error::Kind::DepthMismatch,
                    "node " + x.display() + " lies beyond depth " +
                        std::to_string(depth_) + " of " + label_);
    return values_[node_index(x)];
}

const Rat& ElementaryTest::at_clamped(const BitString& x) const {
    return values_[node_index(x.take(static_cast<std::size_t>(depth_)))];
}

ElementaryTest ElementaryTest::scaled(const Rat& factor, const std::string& label) const {
    if (sgn(factor) <= 0)
        throw std::invalid_argument("test scale factor must be positive");
    std::vector<Rat> values(values_.size(), Rat(0));
    for (std::size_t i = 1; i < values_.size(); ++i)
        values[i] = values_[i] * factor;
    return ElementaryTest(depth_, std::move(values), label);
}

void ElementaryTest::write(std::ostream& os) const {
    os << "depth " << depth_ << '\n';
    for (int len = 0; len <= depth_; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
            const Rat& q = values_[node_index(len, v)];
            os << node_string(len, v).display() << ' ' << q.get_num().get_str()
               << ' ' << q.get_den().get_str() << '\n';
        }
}

TreeSemiMeasure mixture_M(const std::vector<TreeSemiMeasure>& catalog) {
    if (catalog.empty())
        throw Error(Error::Kind::DepthMismatch, "mixture needs at least one member");
    int depth = catalog.front().depth();
    for (const auto& p : catalog)
        if (p.depth() != depth)
            throw Error(Error::Kind::DepthMismatch,
                        "mixture members must share a depth");
    return TreeSemiMeasure::from_fn(
        depth,
        [&](const BitString& x) {
            Rat sum(0);
            long i = 1;
            for (const auto& p : catalog)
                sum += pow2(-(i++)) * p.at(x);
            return sum;
        },
        "M", 0);
}

DeficiencyD deficiency_D(const TreeSemiMeasure& P, const TreeSemiMeasure& M,
                         const BitString& x) {
    if (P.depth() != M.depth())
        throw Error(Error::Kind::DepthMismatch,
                    "deficiency needs measures of equal depth");
    DeficiencyD d;
    d.ratio = 0;
    for (std::size_t n = 0; n <= x.size(); ++n) {
        BitString y = x.take(n);
        const Rat& py = P.at(y);
        if (sgn(py) == 0)
            throw Error(Error::Kind::ZeroMass,
                        P.label() + " vanishes on prefix " + y.display());
        Rat r = M.at(y) / py;
        if (r > d.ratio)
            d.ratio = r;
    }
    d.log2_floor = floor_log2(d.ratio);
    return d;
}

namespace {

// Minimal nodes (an antichain) where value(x) > threshold, walking to
// the given depth. Subtrees where skip() holds contribute nothing.
template <typename Value, typename Skip>
void minimal_exceeders(int depth, const Rat& threshold, const Value& value,
                       const Skip& skip, BitString& cur,
                       std::vector<BitString>& out) {
    if (skip(cur))
        return;
    if (value(cur) > threshold) {
        out.push_back(cur);
        return;
    }
    if (static_cast<int>(cur.size()) >= depth)
        return;
    cur.push_back(0);
    minimal_exceeders(depth, threshold, value, skip, cur, out);
    cur.pop_back();
    cur.push_back(1);
    minimal_exceeders(depth, threshold, value, skip, cur, out);
    cur.pop_back();
}

} // namespace

RatioCheck ratio_test_check(const TreeSemiMeasure& P, const TreeSemiMeasure& M,
                            int depth, int m) {
    if (P.depth() != M.depth() || depth > P.depth())
        throw Error(Error::Kind::DepthMismatch,
                    "ratio check needs a common depth at least the working depth");
    if (m < 0)
        throw std::invalid_argument("threshold exponent must be nonnegative");
    if (!P.is_measure())
        throw std::invalid_argument("ratio check requires a measure, got " +
                                    P.label());
    RatioCheck check;
    check.m = m;
    Rat threshold = pow2(m);
    BitString cur;
    minimal_exceeders(
        depth, threshold, [&](const BitString& x) { return M.at(x) / P.at(x); },
        [&](const BitString& x) { return sgn(P.at(x)) == 0; }, cur, check.antichain);
    check.exceed_mass = 0;
    for (const BitString& x : check.antichain)
        check.exceed_mass += P.at(x);
    check.pass = check.exceed_mass < pow2(-m);
    return check;
}

std::vector<BitString> inverse_set(const MonotoneMap& map, const BitString& x,
                                   int depth) {
    if (x.empty())
        throw Error(Error::Kind::LengthMismatch,
                    "inverse sets are defined for nonempty targets");
    std::vector<BitString> out;
    BitString cur;
    // Descend while the image still sits strictly above x; once the
    // image covers x the current node is the minimal preimage witness.
    auto walk = [&](auto&& self, const BitString& parent_image) -> void {
        BitString image = map.eval(cur);
        if (!parent_image.is_prefix_of(image))
            throw std::invalid_argument(map.label + " is not monotone at " +
                                        cur.display());
        if (x.is_prefix_of(image)) {
            if (!cur.empty() && static_cast<int>(parent_image.size()) <
                                    static_cast<int>(x.size()))
                out.push_back(cur);
            return;  // deeper nodes cannot be minimal
        }
        if (!image.is_prefix_of(x))
            return;  // image diverged from x; no descendant reaches it
        if (static_cast<int>(cur.size()) >= depth)
            return;
        cur.push_back(0);
        self(self, image);
        cur.pop_back();
        cur.push_back(1);
        self(self, image);
        cur.pop_back();
    };
    walk(walk, BitString());
    // The construction yields an antichain; verify the contract anyway.
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (out[i].is_prefix_of(out[j]) || out[j].is_prefix_of(out[i]))
                throw std::logic_error("inverse set is not prefix-free");
    return out;
}

TreeSemiMeasure image_tree_measure(const MonotoneMap& map, const TreeSemiMeasure& P,
                                   int depth) {
    if (depth > P.depth())
        throw Error(Error::Kind::DepthMismatch,
                    "image depth exceeds the source measure depth");
    std::vector<Rat> values(tree_size(depth), Rat(0));
    // Every input node funds exactly the image prefixes its own image
    // reaches beyond its parent's image; summing per output node is the
    // inverse-set sum without quadratic rescans.
    for (int len = 1; len <= depth; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
            BitString y = node_string(len, v);
            const Rat& py = P.at(y);
            if (sgn(py) == 0)
                continue;
            BitString image = map.eval(y);
            BitString parent_image = map.eval(y.parent());
            if (!parent_image.is_prefix_of(image))
                throw std::invalid_argument(map.label + " is not monotone at " +
                                            y.display());
            std::size_t hi = std::min<std::size_t>(image.size(),
                                                   static_cast<std::size_t>(depth));
            for (std::size_t j = parent_image.size() + 1; j <= hi; ++j)
                values[node_index(image.take(j))] += py;
        }
    values[1] = P.at(BitString());
    return TreeSemiMeasure::from_values(depth, std::move(values),
                                        map.label + "(" + P.label() + ")",
                                        P.catalog_index());
}

ElementaryTest pullback_test(const MonotoneMap& map, const ElementaryTest& t,
                             int depth) {
    return ElementaryTest::from_fn(
        depth, [&](const BitString& y) { return t.at_clamped(map.eval(y)); },
        map.label + "*" + t.label());
}

MTestValidation validate_m_test(const ElementaryTest& t, const TreeSemiMeasure& M) {
    if (t.depth() != M.depth())
        throw Error(Error::Kind::DepthMismatch,
                    "test and measure depths must agree");
    MTestValidation result;
    Rat max_value(0);
    for (int len = 0; len <= t.depth(); ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
            const Rat& q = t.at(node_string(len, v));
            if (q > max_value)
                max_value = q;
        }
    result.max_m = sgn(max_value) > 0 ? static_cast<int>(floor_log2(max_value)) + 1 : 0;
    if (result.max_m < 0)
        result.max_m = 0;
    result.pass = true;
    for (int m = 0; m <= result.max_m; ++m) {
        ThresholdCheck check;
        check.m = m;
        Rat threshold = pow2(m);
        BitString cur;
        minimal_exceeders(
            t.depth(), threshold, [&](const BitString& x) { return t.at(x); },
            [](const BitString&) { return false; }, cur, check.antichain);
        check.exceed_mass = 0;
        for (const BitString& x : check.antichain)
            check.exceed_mass += M.at(x);
        check.antichain_size = check.antichain.size();
        check.pass = check.exceed_mass < pow2(-m);
        result.pass = result.pass && check.pass;
        result.checks.push_back(std::move(check));
    }
    return result;
}

InfSum inf_finite(const std::vector<WeightedTest>& catalog, const BitString& x) {
    Rat sum(0);
    for (const WeightedTest& wt : catalog)
        sum += pow2(wt.weight_log2) * wt.test.at_clamped(x);
    if (sgn(sum) == 0)
        throw Error(Error::Kind::ZeroMass,
                    "weighted test sum vanished at " + x.display() +
                        "; the catalog needs a positive member");
    return InfSum{sum, floor_log2(sum)};
}

Thm5Result check_thm5(const MonotoneMap& map, const std::vector<WeightedTest>& catalog,
                      const TreeSemiMeasure& M, const std::vector<BitString>& prefixes) {
    Thm5Result result;
    const int depth = M.depth();
    bool all_valid = true;
    for (const WeightedTest& wt : catalog) {
        result.catalog_valid.push_back(validate_m_test(wt.test, M));
        all_valid = all_valid && result.catalog_valid.back().pass;
    }

    // The domination constant: the image of M itself stays below 2^k M.
    TreeSemiMeasure image_of_M = image_tree_measure(map, M, depth);
    result.max_domination_ratio = 0;
    for (int len = 0; len <= depth; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
            BitString x = node_string(len, v);
            const Rat& m_val = M.at(x);
            if (sgn(m_val) == 0)
                throw std::invalid_argument(
                    "the mixture must be positive on the working tree");
            Rat r = image_of_M.at(x) / m_val;
            if (r > result.max_domination_ratio)
                result.max_domination_ratio = r;
        }
    result.domination_log2 = sgn(result.max_domination_ratio) > 0
                                 ? ceil_log2(result.max_domination_ratio)
                                 : 0;

    for (const WeightedTest& wt : catalog) {
        ElementaryTest pulled = pullback_test(map, wt.test, depth);
        ElementaryTest scaled = pulled.scaled(
            pow2(-result.domination_log2),
            pulled.label() + "/2^" + std::to_string(result.domination_log2));
        result.pullback_valid.push_back(validate_m_test(scaled, M));
        all_valid = all_valid && result.pullback_valid.back().pass;
    }

    for (const BitString& x : prefixes) {
        Thm5Row row;
        row.x = x;
        row.sum_at_x = inf_finite(catalog, x).value;
        row.sum_at_image = inf_finite(catalog, map.eval(x)).value;
        row.ratio = row.sum_at_image / row.sum_at_x;
        row.ratio_log2_floor = floor_log2(row.ratio);
        result.rows.push_back(std::move(row));
    }
    result.hard_pass = all_valid;
    return result;
}

Thm6Result check_thm6(const MonotoneMap& map, const TreeSemiMeasure& P,
                      const TreeSemiMeasure& M,
                      const std::vector<WeightedTest>& catalog, int row_depth) {
    if (P.depth() != M.depth())
        throw Error(Error::Kind::DepthMismatch,
                    "source and mixture depths must agree");
    const int depth = P.depth();
    for (int len = 0; len <= depth; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v)
            if (sgn(P.at(node_string(len, v))) == 0)
                throw std::invalid_argument(
                    P.label() + " must be positive on the working tree");

    TreeSemiMeasure BP = image_tree_measure(map, P, depth);

    // The conserved test: at each node the best ratio seen along the
    // path from the root. Monotone by construction.
    std::vector<Rat> values(tree_size(depth), Rat(0));
    BitString cur;
    auto walk = [&](auto&& self, const Rat& best_above) -> void {
        BitString image = map.eval(cur).take(static_cast<std::size_t>(depth));
        const Rat& bp = BP.at(image);
        Rat best = best_above;
        if (sgn(bp) > 0) {
            Rat r = (P.at(cur) * M.at(image)) / (M.at(cur) * bp);
            if (r > best)
                best = r;
        }
        values[node_index(cur)] = best;
        if (static_cast<int>(cur.size()) >= depth)
            return;
        cur.push_back(0);
        self(self, best);
        cur.pop_back();
        cur.push_back(1);
        self(self, best);
        cur.pop_back();
    };
    walk(walk, Rat(0));

    Thm6Result result{ElementaryTest::from_values(depth, std::move(values),
                                                  "thm6[" + map.label + "," +
                                                      P.label() + "]"),
                      {}, false, false, {}, false};
    result.validation = validate_m_test(result.test, M);

    // Replay the covering inequality exactly: the mass of each exceed
    // antichain is bounded by its own threshold-weighted test sum.
    result.covering_pass = true;
    for (const ThresholdCheck& check : result.validation.checks) {
        Rat rhs(0);
        for (const BitString& x : check.antichain)
            rhs += M.at(x) * result.test.at(x);
        rhs *= pow2(-check.m);
        if (check.exceed_mass > rhs)
            result.covering_pass = false;
    }

    result.test_is_one = true;
    for (int len = 0; len <= depth && result.test_is_one; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v)
            if (result.test.at(node_string(len, v)) != 1) {
                result.test_is_one = false;
                break;
            }

    const int rows_to = std::min(row_depth, depth);
    for (int len = 0; len <= rows_to; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
            Thm6Row row;
            row.x = node_string(len, v);
            row.d_p = deficiency_D(P, M, row.x);
            BitString image = map.eval(row.x).take(static_cast<std::size_t>(depth));
            row.d_image = deficiency_D(BP, M, image);
            row.diff_ratio = row.d_image.ratio / row.d_p.ratio;
            row.diff_log2_floor = floor_log2(row.diff_ratio);
            row.inf = inf_finite(catalog, row.x);
            result.rows.push_back(std::move(row));
        }

    result.hard_pass = result.validation.pass && result.covering_pass;
    return result;
}

} // namespace ait

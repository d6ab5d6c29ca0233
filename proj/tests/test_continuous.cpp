#include "ait/continuous.hpp"

#include "ait/catalog.hpp"
#include "ait/errors.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <sstream>

using namespace ait;
using ait::testfix::check_kind;

namespace {

TreeSemiMeasure uniform_tree(int depth) {
    return TreeSemiMeasure::from_fn(
        depth, [](const BitString& x) { return pow2(-static_cast<long>(x.size())); },
        "uniform", 1);
}

const TreeSemiMeasure& mixture12() {
    static const TreeSemiMeasure M = mixture_M(tree_measure_catalog(12));
    return M;
}

} // namespace

TEST_CASE("tree semi-measures index nodes to their working depth") {
    TreeSemiMeasure u = uniform_tree(3);
    CHECK(u.depth() == 3);
    CHECK(u.at(BitString()) == 1);
    CHECK(u.at(BitString::parse("010")) == Rat(1, 8));
    CHECK(u.at_clamped(BitString::parse("0101")) == Rat(1, 8));
    CHECK(u.superadditive());
    CHECK(u.is_measure());
    check_kind([&] { u.at(BitString::parse("0101")); }, Error::Kind::DepthMismatch);
    check_kind([] { uniform_tree(0); }, Error::Kind::DepthMismatch);
    check_kind([] { uniform_tree(17); }, Error::Kind::DepthMismatch);
}

TEST_CASE("tree construction rejects invalid value vectors") {
    CHECK_THROWS_AS(TreeSemiMeasure::from_values(1, {Rat(0), Rat(1)}, "short"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        TreeSemiMeasure::from_values(1, {Rat(0), Rat(2), Rat(1), Rat(1)}, "big-root"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        TreeSemiMeasure::from_values(1, {Rat(0), Rat(1), Rat(-1, 2), Rat(1, 2)},
                                     "negative"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        TreeSemiMeasure::from_values(1, {Rat(0), Rat(1), Rat(3, 4), Rat(1, 2)},
                                     "superadditivity"),
        std::invalid_argument);
    // strict sub-additivity is allowed: that is what makes it a semi-measure
    TreeSemiMeasure semi = TreeSemiMeasure::from_values(
        1, {Rat(0), Rat(1), Rat(1, 4), Rat(1, 4)}, "semi");
    CHECK(semi.superadditive());
    CHECK(!semi.is_measure());
}

TEST_CASE("the tree writer emits a depth header and breadth-first lines") {
    std::ostringstream os;
    uniform_tree(1).write(os);
    CHECK(os.str() == "depth 1\neps 1 1\n0 1 2\n1 1 2\n");
}

TEST_CASE("the default mixture has its pinned node values") {
    const TreeSemiMeasure& M = mixture12();
    CHECK(M.at(BitString()) == Rat(15, 16));
    CHECK(M.at(BitString::parse("0")) == Rat(5, 12));
    CHECK(M.at(BitString::parse("1")) == Rat(25, 48));
    CHECK(M.at(BitString::parse("000")) == Rat(923, 6912));
    CHECK(M.at(BitString::parse("111")) == Rat(1417, 6912));
    CHECK(M.is_measure());
    CHECK(M.label() == "M");
}

TEST_CASE("mixtures weight members by their catalog position") {
    std::vector<TreeSemiMeasure> solo;
    solo.push_back(uniform_tree(4));
    TreeSemiMeasure M = mixture_M(solo);
    CHECK(M.at(BitString()) == Rat(1, 2));
    CHECK(M.at(BitString::parse("01")) == Rat(1, 8));
    // Halving every node preserves additivity; only the root mass drops.
    CHECK(M.is_measure());
    CHECK(M.superadditive());

    std::vector<TreeSemiMeasure> uneven;
    uneven.push_back(uniform_tree(4));
    uneven.push_back(uniform_tree(5));
    check_kind([&] { mixture_M(uneven); }, Error::Kind::DepthMismatch);
    check_kind([] { mixture_M({}); }, Error::Kind::DepthMismatch);
}

TEST_CASE("every catalog member is dominated by its mixture share") {
    std::vector<TreeSemiMeasure> catalog = tree_measure_catalog(6);
    TreeSemiMeasure M = mixture_M(catalog);
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        Rat w = pow2(-static_cast<long>(i) - 1);
        for (const BitString& x : all_strings_upto(6))
            CHECK(M.at(x) >= w * catalog[i].at(x));
    }
}

TEST_CASE("elementary tests enforce monotonicity along paths") {
    ElementaryTest t = ElementaryTest::from_fn(
        3, [](const BitString& x) { return Rat(static_cast<long>(x.size())); },
        "len");
    CHECK(t.at(BitString::parse("01")) == 2);
    CHECK(t.at_clamped(BitString::parse("0110")) == 3);
    check_kind([&] { t.at(BitString::parse("0110")); }, Error::Kind::DepthMismatch);

    CHECK_THROWS_AS(
        ElementaryTest::from_values(1, {Rat(0), Rat(2), Rat(1), Rat(3)}, "shrinks"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        ElementaryTest::from_values(1, {Rat(0), Rat(1), Rat(2), Rat(-1)}, "negative"),
        std::invalid_argument);
}

TEST_CASE("scaling a test scales every node by the exact factor") {
    ElementaryTest t = ElementaryTest::from_fn(
        2, [](const BitString& x) { return Rat(1 + static_cast<long>(x.size())); },
        "base");
    ElementaryTest s = t.scaled(Rat(3, 2), "base*3/2");
    for (const BitString& x : all_strings_upto(2))
        CHECK(s.at(x) == t.at(x) * Rat(3, 2));
    CHECK(s.label() == "base*3/2");
    CHECK_THROWS_AS(t.scaled(Rat(0), "zero"), std::invalid_argument);
    CHECK_THROWS_AS(t.scaled(Rat(-1), "neg"), std::invalid_argument);
}

TEST_CASE("deficiency_D maximizes the ratio over prefixes") {
    const TreeSemiMeasure& M = mixture12();
    TreeSemiMeasure P = tree_measure_by_label("uniform", 12);

    DeficiencyD at_root = deficiency_D(P, M, BitString());
    CHECK(at_root.ratio == Rat(15, 16));
    CHECK(at_root.log2_floor == -1);

    // The all-zeros path is the first point where the mixture beats the
    // uniform measure, through its point-mass member.
    DeficiencyD d3 = deficiency_D(P, M, BitString::parse("000"));
    CHECK(d3.ratio == Rat(923, 864));
    CHECK(d3.log2_floor == 0);

    // Against itself the ratio is exactly one everywhere.
    for (const BitString& x : all_strings_upto(4))
        CHECK(deficiency_D(M, M, x).ratio == 1);

    // Monotone in the prefix order by construction.
    for (const BitString& x : all_strings_upto(6))
        for (int b : {0, 1})
            CHECK(deficiency_D(P, M, x.with(b)).ratio >=
                  deficiency_D(P, M, x).ratio);

    TreeSemiMeasure point = tree_measure_by_label("point0", 12);
    check_kind([&] { deficiency_D(point, M, BitString::parse("10")); },
               Error::Kind::ZeroMass);
}

TEST_CASE("the ratio test bound, pinned at depth 12 for the uniform source") {
    const TreeSemiMeasure& M = mixture12();
    TreeSemiMeasure P = tree_measure_by_label("uniform", 12);
    struct Pin {
        int m;
        Rat mass;
        std::size_t antichain;
    };
    const Pin pins[] = {{1, Rat(21, 128), 112}, {2, Rat(209, 4096), 41},
                        {3, Rat(1, 64), 10},    {4, Rat(5, 1024), 2},
                        {5, Rat(9, 4096), 2},   {6, Rat(1, 1024), 1}};
    for (const Pin& pin : pins) {
        RatioCheck check = ratio_test_check(P, M, 12, pin.m);
        CHECK(check.exceed_mass == pin.mass);
        CHECK(check.antichain.size() == pin.antichain);
        CHECK(check.pass);
        CHECK(check.exceed_mass < pow2(-pin.m));
    }
}

TEST_CASE("the ratio test degenerates correctly at the edges") {
    const TreeSemiMeasure& M = mixture12();
    // M against itself: the ratio is one, nothing exceeds any threshold.
    RatioCheck self = ratio_test_check(M, M, 12, 1);
    CHECK(self.antichain.empty());
    CHECK(self.exceed_mass == 0);
    CHECK(self.pass);

    // A single-member mixture halves its member: ratio constantly 1/2.
    TreeSemiMeasure u = uniform_tree(6);
    std::vector<TreeSemiMeasure> solo;
    solo.push_back(u);
    RatioCheck half = ratio_test_check(u, mixture_M(solo), 6, 0);
    CHECK(half.antichain.empty());
    CHECK(half.pass);

    TreeSemiMeasure semi = TreeSemiMeasure::from_fn(
        6, [](const BitString& x) { return pow2(-2 * static_cast<long>(x.size())); },
        "semi6");
    CHECK(!semi.is_measure());
    CHECK_THROWS_AS(ratio_test_check(semi, mixture_M(solo), 6, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(ratio_test_check(u, mixture_M(solo), 6, -1),
                    std::invalid_argument);
    check_kind([&] { ratio_test_check(u, mixture12(), 6, 1); },
               Error::Kind::DepthMismatch);
}

TEST_CASE("inverse sets are the minimal covering antichains") {
    MonotoneMap dbl = monotone_map_by_label("double");
    auto inv = [](const MonotoneMap& map, const char* x) {
        return inverse_set(map, BitString::parse(x), 8);
    };

    CHECK(inv(dbl, "11") == std::vector<BitString>{BitString::parse("1")});
    CHECK(inv(dbl, "1") == std::vector<BitString>{BitString::parse("1")});
    CHECK(inv(dbl, "10").empty());

    MonotoneMap il = monotone_map_by_label("interleave0");
    CHECK(inv(il, "10") == std::vector<BitString>{BitString::parse("1")});
    CHECK(inv(il, "11").empty());

    MonotoneMap pre = monotone_map_by_label("prepend0");
    CHECK(inv(pre, "0") ==
          std::vector<BitString>{BitString::parse("0"), BitString::parse("1")});
    CHECK(inv(pre, "1").empty());

    MonotoneMap head = monotone_map_by_label("head1");
    CHECK(inv(head, "0") == std::vector<BitString>{BitString::parse("0")});
    CHECK(inv(head, "00").empty());

    MonotoneMap id = monotone_map_by_label("identity");
    for (const BitString& x : all_strings_upto(4))
        if (!x.empty())
            CHECK(inverse_set(id, x, 8) == std::vector<BitString>{x});

    check_kind([&] { inverse_set(dbl, BitString(), 8); },
               Error::Kind::LengthMismatch);
}

TEST_CASE("inverse sets are prefix-free for every catalog map") {
    for (const MonotoneMap& map : monotone_map_catalog())
        for (const BitString& x : all_strings_upto(5)) {
            if (x.empty())
                continue;
            std::vector<BitString> ys = inverse_set(map, x, 8);
            for (std::size_t i = 0; i < ys.size(); ++i)
                for (std::size_t j = 0; j < ys.size(); ++j)
                    if (i != j)
                        CHECK(!ys[i].is_prefix_of(ys[j]));
        }
}

TEST_CASE("inverse_set rejects a non-monotone map when the walk sees it") {
    MonotoneMap lastbit{[](const BitString& x) {
                            return x.empty() ? x : x.drop(x.size() - 1);
                        },
                        8, "lastbit"};
    CHECK_THROWS_AS(inverse_set(lastbit, BitString::parse("10"), 3),
                    std::invalid_argument);
}

TEST_CASE("image measures agree with inverse-set mass sums") {
    for (const MonotoneMap& map : monotone_map_catalog())
        for (const char* p_label : {"uniform", "biased34"}) {
            TreeSemiMeasure P = tree_measure_by_label(p_label, 8);
            TreeSemiMeasure image = image_tree_measure(map, P, 8);
            CHECK(image.at(BitString()) == P.at(BitString()));
            CHECK(image.superadditive());
            for (const BitString& x : all_strings_upto(6)) {
                if (x.empty())
                    continue;
                Rat sum(0);
                for (const BitString& y : inverse_set(map, x, 8))
                    sum += P.at(y);
                CHECK(image.at(x) == sum);
            }
        }
}

TEST_CASE("the doubling image of the uniform measure, pinned") {
    TreeSemiMeasure P = tree_measure_by_label("uniform", 8);
    TreeSemiMeasure image = image_tree_measure(monotone_map_by_label("double"), P, 8);
    CHECK(image.at(BitString::parse("11")) == Rat(1, 2));
    CHECK(image.at(BitString::parse("1")) == Rat(1, 2));
    CHECK(image.at(BitString::parse("10")) == 0);
    CHECK(image.at(BitString::parse("1100")) == Rat(1, 4));

    TreeSemiMeasure shallow = tree_measure_by_label("uniform", 6);
    check_kind(
        [&] { image_tree_measure(monotone_map_by_label("double"), shallow, 8); },
        Error::Kind::DepthMismatch);
}

TEST_CASE("pullbacks read the test at the clamped image") {
    ElementaryTest cyl = default_test_catalog(8)[1].test;
    MonotoneMap dbl = monotone_map_by_label("double");
    ElementaryTest pulled = pullback_test(dbl, cyl, 8);
    for (const BitString& y : all_strings_upto(8))
        CHECK(pulled.at(y) == cyl.at(dbl.eval(y).take(8)));
    CHECK(pulled.at(BitString::parse("11")) == 4);
    CHECK(pulled.at(BitString::parse("1")) == 0);

    ElementaryTest same = pullback_test(monotone_map_by_label("identity"), cyl, 8);
    for (const BitString& y : all_strings_upto(8))
        CHECK(same.at(y) == cyl.at(y));
}

TEST_CASE("the default tests validate against the mixture, pinned max_m") {
    const TreeSemiMeasure& M = mixture12();
    std::vector<WeightedTest> catalog = default_test_catalog(12);
    const int expected_max_m[] = {1, 3, 3};
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        MTestValidation v = validate_m_test(catalog[i].test, M);
        CHECK(v.pass);
        CHECK(v.max_m == expected_max_m[i]);
        CHECK(v.checks.size() == static_cast<std::size_t>(v.max_m) + 1);
    }
}

TEST_CASE("an inflated cylinder test fails validation honestly") {
    const TreeSemiMeasure& M = mixture12();
    ElementaryTest big = default_test_catalog(12)[1].test.scaled(16, "cyl*16");
    MTestValidation v = validate_m_test(big, M);
    CHECK(!v.pass);
    CHECK(v.max_m == 7);
    // The cylinder carries M-mass 1417/6912, about 0.205: below 1/4 but
    // above 1/8, so thresholds 3 through 5 fail. At 6 and 7 the exceed
    // set is empty because no node value is strictly above 64.
    for (int m = 0; m <= 7; ++m)
        CHECK(v.checks[m].pass == (m <= 2 || m >= 6));
    CHECK(v.checks[3].exceed_mass == Rat(1417, 6912));
    CHECK(v.checks[6].antichain.empty());
}

TEST_CASE("inf_finite sums the weighted catalog exactly") {
    std::vector<WeightedTest> catalog = default_test_catalog(12);
    CHECK(inf_finite(catalog, BitString()).value == Rat(5, 8));
    CHECK(inf_finite(catalog, BitString()).log2_floor == -1);
    CHECK(inf_finite(catalog, BitString::parse("111")).value == Rat(13, 8));
    CHECK(inf_finite(catalog, BitString::parse("111")).log2_floor == 0);
    CHECK(inf_finite(catalog, BitString::parse("00")).value == 1);
    check_kind([] { inf_finite({}, BitString()); }, Error::Kind::ZeroMass);
}

TEST_CASE("thm5 verifies domination with pinned constants per map") {
    const TreeSemiMeasure& M = mixture12();
    std::vector<WeightedTest> catalog = default_test_catalog(12);
    struct Pin {
        const char* label;
        long k;
    };
    const Pin pins[] = {
        {"identity", 0}, {"double", 7}, {"interleave0", 9}, {"prepend0", 2},
        {"head1", 0}};
    for (const Pin& pin : pins) {
        Thm5Result r = check_thm5(monotone_map_by_label(pin.label), catalog, M,
                                  all_strings(3));
        CHECK(r.hard_pass);
        CHECK(r.domination_log2 == pin.k);
        CHECK(r.max_domination_ratio <= pow2(pin.k));
        CHECK(r.catalog_valid.size() == 3);
        CHECK(r.pullback_valid.size() == 3);
        CHECK(r.rows.size() == 8);
    }
}

TEST_CASE("thm5 under the identity map leaves every row untouched") {
    const TreeSemiMeasure& M = mixture12();
    std::vector<WeightedTest> catalog = default_test_catalog(12);
    Thm5Result r = check_thm5(monotone_map_by_label("identity"), catalog, M,
                              all_strings_upto(4));
    for (const Thm5Row& row : r.rows) {
        CHECK(row.ratio == 1);
        CHECK(row.ratio_log2_floor == 0);
        CHECK(row.sum_at_x == inf_finite(catalog, row.x).value);
    }
}

TEST_CASE("thm6 conserves the deficiency test across the whole catalog") {
    const TreeSemiMeasure& M = mixture12();
    std::vector<WeightedTest> catalog = default_test_catalog(12);
    for (const MonotoneMap& map : monotone_map_catalog())
        for (const char* p_label : {"uniform", "biased34", "biased23"}) {
            TreeSemiMeasure P = tree_measure_by_label(p_label, 12);
            Thm6Result r = check_thm6(map, P, M, catalog, 2);
            CHECK(r.hard_pass);
            CHECK(r.validation.pass);
            CHECK(r.covering_pass);
            CHECK(r.rows.size() == 7);
            CHECK(r.test_is_one == (map.label == "identity"));
        }
}

TEST_CASE("thm6 rows carry exact deficiency ratios") {
    const TreeSemiMeasure& M = mixture12();
    TreeSemiMeasure P = tree_measure_by_label("uniform", 12);
    Thm6Result r = check_thm6(monotone_map_by_label("identity"), P, M,
                              default_test_catalog(12), 3);
    for (const Thm6Row& row : r.rows) {
        CHECK(row.d_p.ratio == deficiency_D(P, M, row.x).ratio);
        CHECK(row.diff_ratio == 1);
        CHECK(row.diff_log2_floor == 0);
    }
}

TEST_CASE("thm6 rejects sources that are not strictly positive") {
    const TreeSemiMeasure& M = mixture12();
    TreeSemiMeasure point = tree_measure_by_label("point0", 12);
    CHECK_THROWS_AS(check_thm6(monotone_map_by_label("identity"), point, M,
                               default_test_catalog(12), 2),
                    std::invalid_argument);
    TreeSemiMeasure shallow = tree_measure_by_label("uniform", 8);
    check_kind(
        [&] {
            check_thm6(monotone_map_by_label("identity"), shallow, M,
                       default_test_catalog(12), 2);
        },
        Error::Kind::DepthMismatch);
}

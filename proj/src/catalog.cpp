#include "ait/catalog.hpp"

#include "ait/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace ait {

// read bit; if 1 skip to the output-1 branch; either branch loops back.
const char* const kMonoIdentityProgram = "010101001011101010100000110100";
// as above with each output doubled and nine-bit skips both ways.
const char* const kMonoDoubleProgram = "010101001011011000101011100100000000110110";

std::vector<TotalFunction> total_function_catalog() {
    std::vector<TotalFunction> catalog;
    catalog.push_back({[](const BitString& x) { return x; }, "identity", 2});
    catalog.push_back({[](const BitString& x) {
                           return x.empty() ? x : x.parent();
                       },
                       "drop_last", 3});
    catalog.push_back({[](const BitString& x) {
                           BitString out;
                           for (std::size_t i = 0; i < x.size(); ++i)
                               out.push_back(1 - x.bit(i));
                           return out;
                       },
                       "flip_all", 3});
    catalog.push_back({[](const BitString& x) {
                           if (x.empty())
                               return x;
                           BitString out;
                           out.push_back(0);
                           return out + x;
                       },
                       "prepend_zero", 3});
    catalog.push_back({[](const BitString&) { return BitString(); },
                       "const_bottom", 1});
    return catalog;
}

TotalFunction total_function_by_label(const std::string& label) {
    for (TotalFunction& f : total_function_catalog())
        if (f.label == label)
            return std::move(f);
    throw std::invalid_argument("unknown total function: " + label);
}

DiscreteSemiMeasure measure_by_label(const std::string& label) {
    auto colon = label.find(':');
    if (colon != std::string::npos) {
        std::string kind = label.substr(0, colon);
        std::string arg = label.substr(colon + 1);
        try {
            if (kind == "uniform")
                return uniform_n(std::stoi(arg));
            if (kind == "geom")
                return geometric_measure(std::stoi(arg));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad measure argument in: " + label);
        }
        if (kind == "point")
            return point_measure(BitString::parse(arg));
    }
    throw std::invalid_argument("unknown measure: " + label);
}

std::vector<MonotoneMap> monotone_map_catalog() {
    std::vector<MonotoneMap> catalog;
    catalog.push_back({[](const BitString& x) { return x; },
                       TreeSemiMeasure::kMaxDepth, "identity"});
    catalog.push_back({[](const BitString& x) {
                           BitString out;
                           for (std::size_t i = 0; i < x.size(); ++i) {
                               out.push_back(x.bit(i));
                               out.push_back(x.bit(i));
                           }
                           return out;
                       },
                       TreeSemiMeasure::kMaxDepth, "double"});
    catalog.push_back({[](const BitString& x) {
                           BitString out;
                           for (std::size_t i = 0; i < x.size(); ++i) {
                               out.push_back(x.bit(i));
                               out.push_back(0);
                           }
                           return out;
                       },
                       TreeSemiMeasure::kMaxDepth, "interleave0"});
    catalog.push_back({[](const BitString& x) {
                           if (x.empty())
                               return x;
                           BitString out;
                           out.push_back(0);
                           return out + x;
                       },
                       TreeSemiMeasure::kMaxDepth, "prepend0"});
    catalog.push_back({[](const BitString& x) { return x.take(1); },
                       TreeSemiMeasure::kMaxDepth, "head1"});
    return catalog;
}

MonotoneMap monotone_map_by_label(const std::string& label) {
    for (MonotoneMap& m : monotone_map_catalog())
        if (m.label == label)
            return std::move(m);
    throw std::invalid_argument("unknown monotone map: " + label);
}

namespace {

TreeSemiMeasure bernoulli_tree(int depth, const Rat& p_one, std::string label,
                               int index) {
    return TreeSemiMeasure::from_fn(
        depth,
        [&](const BitString& x) {
            Rat mass(1);
            for (std::size_t i = 0; i < x.size(); ++i)
                mass *= x.bit(i) ? p_one : Rat(1) - p_one;
            return mass;
        },
        std::move(label), index);
}

} // namespace

std::vector<TreeSemiMeasure> tree_measure_catalog(int depth) {
    std::vector<TreeSemiMeasure> catalog;
    catalog.push_back(bernoulli_tree(depth, Rat(1, 2), "uniform", 1));
    catalog.push_back(bernoulli_tree(depth, Rat(3, 4), "biased34", 2));
    catalog.push_back(bernoulli_tree(depth, Rat(2, 3), "biased23", 3));
    catalog.push_back(TreeSemiMeasure::from_fn(
        depth,
        [](const BitString& x) {
            return Rat(x == BitString::zeros(x.size()) ? 1 : 0);
        },
        "point0", 4));
    return catalog;
}

TreeSemiMeasure tree_measure_by_label(const std::string& label, int depth) {
    if (label == "M")
        return mixture_M(tree_measure_catalog(depth));
    for (TreeSemiMeasure& p : tree_measure_catalog(depth))
        if (p.label() == label)
            return std::move(p);
    throw std::invalid_argument("unknown tree measure: " + label);
}

std::vector<WeightedTest> default_test_catalog(int depth) {
    std::vector<WeightedTest> catalog;
    catalog.push_back({ElementaryTest::from_fn(
                           depth, [](const BitString&) { return Rat(1); },
                           "const1"),
                       -1});
    BitString core = BitString::parse("111");
    catalog.push_back({ElementaryTest::from_fn(
                           depth,
                           [core](const BitString& x) {
                               return Rat(core.is_prefix_of(x) ? 4 : 0);
                           },
                           "cyl_111_4"),
                       -2});
    catalog.push_back({ElementaryTest::from_fn(
                           depth,
                           [](const BitString& x) {
                               std::size_t run = 0;
                               while (run < x.size() && run < 2 && x.bit(run) == 0)
                                   ++run;
                               return pow2(static_cast<long>(run));
                           },
                           "zerorun2"),
                       -3});
    return catalog;
}

std::string catalog_manifest() {
    std::ostringstream os;
    os << "aitlab catalog 1\n";
    for (const TotalFunction& f : total_function_catalog())
        os << "total " << f.label << ' ' << f.description_cost << '\n';
    os << "staged thm2_B parametric\n";
    os << "measure uniform:<n> parametric\n";
    os << "measure geom:<cutoff> parametric\n";
    os << "measure point:<bits> parametric\n";
    for (const MonotoneMap& m : monotone_map_catalog())
        os << "monotone " << m.label << ' ' << m.depth_bound << '\n';
    for (const TreeSemiMeasure& p : tree_measure_catalog(1))
        os << "tree " << p.label() << ' ' << p.catalog_index() << '\n';
    for (const WeightedTest& t : default_test_catalog(1))
        os << "test " << t.test.label() << ' ' << t.weight_log2 << '\n';
    os << "mono_program identity " << kMonoIdentityProgram << '\n';
    os << "mono_program double " << kMonoDoubleProgram << '\n';
    return os.str();
}

} // namespace ait

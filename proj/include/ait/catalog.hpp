#pragma once

#include "ait/continuous.hpp"
#include "ait/measures.hpp"
#include "ait/staged.hpp"

#include <string>
#include <vector>

namespace ait {

// Monotone machine programs realizing the first two map catalog entries
// on the real interpreter; the continuous layer's maps stay abstract,
// these witness that the machine can host them.
extern const char* const kMonoIdentityProgram;
extern const char* const kMonoDoubleProgram;

// The discrete transformation catalog. Labels: identity, drop_last,
// flip_all, prepend_zero, const_bottom.
std::vector<TotalFunction> total_function_catalog();
TotalFunction total_function_by_label(const std::string& label);

// Measures by label: "uniform:<n>", "geom:<cutoff>", "point:<bits>".
DiscreteSemiMeasure measure_by_label(const std::string& label);

// The monotone map catalog. Labels: identity, double, interleave0,
// prepend0, head1. Every member fixes the empty string, so image
// measures stay positive at the root.
std::vector<MonotoneMap> monotone_map_catalog();
MonotoneMap monotone_map_by_label(const std::string& label);

// The tree measure catalog at a working depth, in mixture order:
// uniform, biased34, biased23, point0 with catalog indexes 1..4.
std::vector<TreeSemiMeasure> tree_measure_catalog(int depth);
TreeSemiMeasure tree_measure_by_label(const std::string& label, int depth);

// The elementary tests shipped with the harness, weighted 2^-i by
// position: const1, cyl_111_4, zerorun2. Each validates as a test
// against the default mixture at any working depth.
std::vector<WeightedTest> default_test_catalog(int depth);

// The registry as deterministic text; docs/catalog.txt holds the same
// bytes and the test suite keeps them in sync.
std::string catalog_manifest();

} // namespace ait

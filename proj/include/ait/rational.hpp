#pragma once

#include <gmpxx.h>

#include <string>

namespace ait {

// Exact rational arithmetic. Every probability, mass, ratio and test
// value in the library is a Rat; floating point never appears.
using Rat = mpq_class;

// 2^k for any integer k (k may be negative).
Rat pow2(long k);

// Largest k with 2^k <= q. Requires q > 0.
long floor_log2(const Rat& q);

// Smallest k with q <= 2^k. Requires q > 0.
long ceil_log2(const Rat& q);

// Exact integer ceil(-log2 q). Requires q > 0. Equals -floor_log2(q).
long ceil_neg_log2(const Rat& q);

// Canonical display form: "3/4", integers without the "/1".
std::string rat_str(const Rat& q);

// Parse the display form back. Throws Error(Io) on garbage.
Rat rat_parse(const std::string& s);

} // namespace ait

#pragma once

#include "ait/enumeration.hpp"
#include "ait/errors.hpp"

#include <doctest.h>

namespace ait::testfix {

// Tables are immutable and deterministic, so every suite in the binary
// shares one copy per budget.
inline const EnumerationTable& table12() {
    static const EnumerationTable t = enumerate({12, 1000, BitString()});
    return t;
}

inline const EnumerationTable& table14() {
    static const EnumerationTable t = enumerate({14, 10000, BitString()});
    return t;
}

inline const EnumerationTable& table18() {
    static const EnumerationTable t = enumerate({18, 100000, BitString()});
    return t;
}

inline const EnumerationTable& oracle18() {
    static const EnumerationTable t =
        enumerate({18, 100000, halting_oracle(table18(), 64)});
    return t;
}

template <typename F>
void check_kind(F&& body, Error::Kind want) {
    try {
        body();
        FAIL_CHECK("expected Error(" << to_string(want) << "), nothing thrown");
    } catch (const Error& e) {
        CHECK(e.kind() == want);
    }
}

} // namespace ait::testfix

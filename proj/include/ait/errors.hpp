#pragma once

#include <stdexcept>
#include <string>

namespace ait {

// One exception type with a machine-readable kind. Callers that care
// about the category switch on kind(); everyone else sees what().
class Error : public std::runtime_error {
public:
    enum class Kind {
        MalformedCode,     // self-delimiting decode failed
        LengthMismatch,    // operands of unequal length, or empty where nonempty required
        BadLength,         // a staged function received an input of the wrong length class
        ZeroMass,          // measure value required to be positive was zero
        ZeroDenominator,   // a calibration or ratio had nothing to divide by
        NoProgram,         // complexity requested for a string with no program in the table
        ResourceLimit,     // enumeration or construction exceeded its hard cap
        DepthMismatch,     // tree objects of different working depths combined
        MissingCache,      // an operation demanded a cache that was not supplied
        BadCache,          // cache file rejected (format or machine version)
        Io                 // file could not be read or written
    };

    Error(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

inline const char* to_string(Error::Kind k) {
    switch (k) {
    case Error::Kind::MalformedCode:   return "malformed-code";
    case Error::Kind::LengthMismatch:  return "length-mismatch";
    case Error::Kind::BadLength:       return "bad-length";
    case Error::Kind::ZeroMass:        return "zero-mass";
    case Error::Kind::ZeroDenominator: return "zero-denominator";
    case Error::Kind::NoProgram:       return "no-program";
    case Error::Kind::ResourceLimit:   return "resource-limit";
    case Error::Kind::DepthMismatch:   return "depth-mismatch";
    case Error::Kind::MissingCache:    return "missing-cache";
    case Error::Kind::BadCache:        return "bad-cache";
    case Error::Kind::Io:              return "io";
    }
    return "unknown";
}

} // namespace ait

#pragma once

#include <stdexcept>
#include <string>

namespace fgqa {

// Rejected argument: out-of-domain value, malformed unit tag, mismatched sizes.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A physical precondition does not hold (collapsed barrier, singular network).
class PhysicsError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}
}  // namespace detail

}  // namespace fgqa

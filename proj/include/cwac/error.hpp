#pragma once

#include <stdexcept>
#include <string>

namespace cwac {

// Invalid shapes, out-of-range parameters, malformed serializations.
// The command line tool maps this to exit code 2.
class ParamError : public std::invalid_argument {
public:
    explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

// An exact search refused to materialize a universe larger than the
// configured cap.  required_cap carries the size that would be needed
// (decimal string, it can exceed 64 bits).  CLI exit code 4.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, std::string required)
        : std::runtime_error(what), required_cap(std::move(required)) {}
    std::string required_cap;
};

}  // namespace cwac

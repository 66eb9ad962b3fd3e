#pragma once

#include <stdexcept>
#include <string>

namespace ternary {

// Precondition or domain failure inside a computation (exit code 1 at the CLI).
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid run configuration, or a checkpoint that does not match it (exit code 2).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class cancelled : public std::runtime_error {
public:
    cancelled() : std::runtime_error("computation cancelled") {}
};

} // namespace ternary

#pragma once

#include <stdexcept>
#include <string>

namespace chainrec {

/// Invalid or inconsistent run configuration. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A resource guard was hit (e.g. instance too large). CLI maps this to exit code 3.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad value passed to a library call.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace chainrec

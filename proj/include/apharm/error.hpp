#pragma once

#include <stdexcept>
#include <string>

namespace apharm {

// Which exit code family an error belongs to when surfaced through the CLI.
enum class ErrorCategory { usage, validation, computation };

// Base for every error raised by the library. `name()` is the stable error
// identifier (e.g. "NotFound", "NotAbelian") that the CLI passes through.
class Error : public std::runtime_error {
public:
    Error(std::string name, ErrorCategory category, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)), category_(category) {}

    const std::string& name() const noexcept { return name_; }
    ErrorCategory category() const noexcept { return category_; }

private:
    std::string name_;
    ErrorCategory category_;
};

inline Error invalid_input(const std::string& what) {
    return Error("InvalidInput", ErrorCategory::validation, what);
}

inline Error basis_mismatch() {
    return Error("BasisMismatch", ErrorCategory::validation,
                 "trigonometric polynomials are over different frequency bases");
}

inline Error group_mismatch() {
    return Error("GroupMismatch", ErrorCategory::validation,
                 "group functions live on different groups");
}

inline Error computation_error(std::string name, const std::string& what) {
    return Error(std::move(name), ErrorCategory::computation, what);
}

} // namespace apharm

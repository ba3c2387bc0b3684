#pragma once

#include <stdexcept>
#include <string>

namespace tdl {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Request exceeds the configured memory budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The symbolic coefficient pipeline met an input it cannot reduce exactly,
/// or one of its internal consistency checks failed.
class PipelineError : public std::runtime_error {
public:
    PipelineError(const std::string& what, std::string offending = {},
                  double fallback = 0.0, bool has_fallback = false)
        : std::runtime_error(what),
          offending_(std::move(offending)),
          fallback_(fallback),
          has_fallback_(has_fallback) {}

    /// Text form of the rational function that triggered the failure, if any.
    const std::string& offending() const noexcept { return offending_; }
    bool has_fallback() const noexcept { return has_fallback_; }
    /// Numerically summed value of the offending series.
    double fallback_value() const noexcept { return fallback_; }

private:
    std::string offending_;
    double fallback_;
    bool has_fallback_;
};

}  // namespace tdl

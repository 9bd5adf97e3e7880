#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace depthlang {

/// Base class for all toolkit errors. kind() returns a stable machine-readable
/// tag used by the CLI's error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Malformed on-disk data. Messages name the offending file and, where known,
/// the byte offset or field.
struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error("format", msg) {}
};

/// Structurally valid input that violates a documented invariant.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error("validation", msg) {}
};

/// Caller passed arguments that cannot be honored (overlapping scene sets,
/// mismatched grid sizes, ...).
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& msg) : Error("argument", msg) {}
};

/// A referenced entity (instance id, scene name, relation partner) is absent.
struct NotFoundError : Error {
    explicit NotFoundError(const std::string& msg) : Error("not_found", msg) {}
};

/// An object or image carries no usable signal (no valid depth pixels).
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error("degenerate", msg) {}
};

/// Inconsistent or incomplete run configuration.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config", msg) {}
};

/// A request that the masking policy forbids (non-unique target class).
struct PolicyError : Error {
    explicit PolicyError(const std::string& msg) : Error("policy", msg) {}
};

/// Warning sink. Warnings go to stderr; callers that need to count them
/// (partitioning, degenerate-object skips) receive counts through return
/// values instead.
inline void warn(const std::string& message) {
    std::fprintf(stderr, "[warn] %s\n", message.c_str());
}

}  // namespace depthlang

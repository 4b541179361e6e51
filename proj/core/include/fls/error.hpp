#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fls {

enum class ErrorCode {
    domain,
    size_bound,
    arity,
    precondition,
    invalid_matroid,
    rank,
    near_discriminant,
    continuation,
    structure_invalid,
    flatness,
    well_definedness,
    schema,
    internal,
};

/// Stable identifier used in CLI error envelopes, e.g. "near_discriminant".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace fls

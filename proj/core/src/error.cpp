#include "fls/error.hpp"

namespace fls {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::size_bound: return "size_bound";
    case ErrorCode::arity: return "arity";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::invalid_matroid: return "invalid_matroid";
    case ErrorCode::rank: return "rank";
    case ErrorCode::near_discriminant: return "near_discriminant";
    case ErrorCode::continuation: return "continuation";
    case ErrorCode::structure_invalid: return "structure_invalid";
    case ErrorCode::flatness: return "flatness";
    case ErrorCode::well_definedness: return "well_definedness";
    case ErrorCode::schema: return "schema";
    case ErrorCode::internal: return "internal";
    }
    return "internal";
}

}  // namespace fls

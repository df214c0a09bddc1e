#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mord {

// Stable error codes. The names returned by code_name() are part of the
// CLI's output contract; do not rename them.
enum class errc {
  input_not_integral,
  rank_deficient,
  not_sublattice,
  algebra_mismatch,
  needs_supplied_idempotents,
  bad_idempotents,
  not_integral,
  not_full_rank,
  not_prime,
  internal_error,
  needs_supplied_primes,
  not_commutative,
  zero_element,
  dimension_too_large,
  embedding_not_algebra_map,
  action_mismatch,
  not_contained,
  not_a_module_map,
  not_an_order,
  not_semisimple,
  not_central_simple,
  not_delta_lattice,
  not_an_algebra,
  parse_error,
  schema_error,
  invalid_argument,
};

constexpr std::string_view code_name(errc c) noexcept {
  switch (c) {
    case errc::input_not_integral: return "InputNotIntegral";
    case errc::rank_deficient: return "RankDeficient";
    case errc::not_sublattice: return "NotSublattice";
    case errc::algebra_mismatch: return "AlgebraMismatch";
    case errc::needs_supplied_idempotents: return "NeedsSuppliedIdempotents";
    case errc::bad_idempotents: return "BadIdempotents";
    case errc::not_integral: return "NotIntegral";
    case errc::not_full_rank: return "NotFullRank";
    case errc::not_prime: return "NotPrime";
    case errc::internal_error: return "InternalError";
    case errc::needs_supplied_primes: return "NeedsSuppliedPrimes";
    case errc::not_commutative: return "NotCommutative";
    case errc::zero_element: return "ZeroElement";
    case errc::dimension_too_large: return "DimensionTooLarge";
    case errc::embedding_not_algebra_map: return "EmbeddingNotAlgebraMap";
    case errc::action_mismatch: return "ActionMismatch";
    case errc::not_contained: return "NotContained";
    case errc::not_a_module_map: return "NotAModuleMap";
    case errc::not_an_order: return "NotAnOrder";
    case errc::not_semisimple: return "NotSemisimple";
    case errc::not_central_simple: return "NotCentralSimple";
    case errc::not_delta_lattice: return "NotDeltaLattice";
    case errc::not_an_algebra: return "NotAnAlgebra";
    case errc::parse_error: return "ParseError";
    case errc::schema_error: return "SchemaError";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message, std::string location = {})
      : std::runtime_error(std::string(code_name(code)) + ": " + message),
        code_(code),
        message_(message),
        location_(std::move(location)) {}

  errc code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& location() const noexcept { return location_; }

 private:
  errc code_;
  std::string message_;
  std::string location_;
};

[[noreturn]] inline void fail(errc code, const std::string& message,
                              std::string location = {}) {
  throw error(code, message, std::move(location));
}

}  // namespace mord

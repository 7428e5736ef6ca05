#pragma once

#include <stdexcept>
#include <string>

namespace pcs {

enum class errc {
  division_by_zero,
  field_mismatch,
  unsupported_in_char_zero,
  no_root_in_field,
  not_a_unit,
  precision_exhausted,
  bound_exhausted,
  common_factor,
  leading_coefficient_not_unit,
  not_primary,
  not_isolated,
  not_reduced,
  extension_required,
  characteristic_divides_index,
  characteristic_divides_r,
  characteristic_divides_multiplicity,
  no_pure_y_term,
  tower_invariant_violated,
  hypothesis_violated,
  not_in_semigroup,
  syntax_error,
  unsupported_input,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace pcs

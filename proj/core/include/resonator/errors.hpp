#pragma once

#include <stdexcept>
#include <string>

namespace resonator {

enum class errc {
  // graph validation
  not_trivalent,
  non_positive_length,
  disconnected,
  bad_cyclic_order,
  non_positive_scale,
  // symbolic zeta
  matrix_too_large,
  irrational_rates,
  // root finding
  zero_leading_coefficient,
  zero_on_boundary,
  quadrature_not_converged,
  no_convergence,
  no_sign_information,
  boundary_resonance,
  // hyperbolic kernel
  pole_hit,
  not_hyperbolic,
  pole_inside_disk,
  domain_error,
  not_a_disk_map,
  // IFS construction
  degenerate_spine,
  gluing_mismatch,
  numerical_failure,
  pole_too_close,
  bound_not_applicable,
  // io / config
  parse_error,
  config_error,
};

const char* errc_name(errc c);

// all library failures are reported through this exception type; `code()`
// distinguishes configuration mistakes from numeric breakdowns for the CLI
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace resonator

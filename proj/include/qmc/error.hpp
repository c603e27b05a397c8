#pragma once

#include <stdexcept>
#include <string>

namespace qmc {

enum class errc {
    invalid_argument,
    index_overflow,
    division_by_zero,
    base_too_small,
    length_mismatch,
    parse_error,
    invalid_digit,
    shape_mismatch,
    not_power_of_base,
    dimension_mismatch,
    budget_exceeded,
    not_odd_multiple,
    non_positive_sample,
    fit_diverged,
    unsupported_degree,
    ill_conditioned,
    domain_error,
    unsupported_dimension,
    io_error,
};

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace qmc

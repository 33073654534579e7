#pragma once

#include <stdexcept>
#include <string>

namespace riskwave {

enum class ErrorCode {
    invalid_argument,
    invalid_signs,
    out_of_domain,
    amplitude_mismatch,
    nonpositive_k,
    degenerate_leading_coefficient,
    invalid_roots,
    infeasible_constraints,
    non_simplest_mode,
    particle_out_of_domain,
    incompatible_grids,
    cfl_violation,
    bad_grid,
    instability,
    probe_out_of_domain,
    constraint_violation,
    config_syntax,
    config_unknown_key,
    io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace riskwave

#include "riskwave/error.hpp"

namespace riskwave {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_signs: return "invalid-signs";
    case ErrorCode::out_of_domain: return "out-of-domain";
    case ErrorCode::amplitude_mismatch: return "amplitude-mismatch";
    case ErrorCode::nonpositive_k: return "nonpositive-k";
    case ErrorCode::degenerate_leading_coefficient: return "degenerate-leading-coefficient";
    case ErrorCode::invalid_roots: return "invalid-roots";
    case ErrorCode::infeasible_constraints: return "infeasible-constraints";
    case ErrorCode::non_simplest_mode: return "non-simplest-mode";
    case ErrorCode::particle_out_of_domain: return "particle-out-of-domain";
    case ErrorCode::incompatible_grids: return "incompatible-grids";
    case ErrorCode::cfl_violation: return "cfl-violation";
    case ErrorCode::bad_grid: return "bad-grid";
    case ErrorCode::instability: return "instability-detected";
    case ErrorCode::probe_out_of_domain: return "probe-out-of-domain";
    case ErrorCode::constraint_violation: return "constraint-violation";
    case ErrorCode::config_syntax: return "syntax-error";
    case ErrorCode::config_unknown_key: return "unknown-key";
    case ErrorCode::io: return "io-error";
    }
    return "unknown";
}

} // namespace riskwave

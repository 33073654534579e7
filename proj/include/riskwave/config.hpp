#pragma once

#include "riskwave/dispersion.hpp"
#include "riskwave/error.hpp"
#include "riskwave/fdsim.hpp"
#include "riskwave/kinetic.hpp"
#include "riskwave/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace riskwave {

// Flat sectioned key = value text:
//
//   # comment
//   [model]
//   a1 = 1
//   [mode]
//   omega = 1
//
// Blank lines and lines starting with '#' or ';' are ignored. Keys are unique
// per section; unknown sections or keys are rejected.

enum class ModeKind { compressible, incompressible, simplest };

const char* to_string(ModeKind k);

enum class TrajectoryMethod { closed_form, integrate };

const char* to_string(TrajectoryMethod m);

enum class SimInit { zero, mode };

const char* to_string(SimInit s);

struct ModeSection {
    ModeKind kind = ModeKind::compressible;
    double omega = 1.0;
    double k = 1.0;
    double amplitude = 0.01;
    WeightPolicy policy = WeightPolicy::minimal_norm;
    double tol = default_root_tol;

    bool operator==(const ModeSection&) const = default;
};

struct SweepSection {
    double k_min = 0.1;
    double k_max = 10.0;
    int k_count = 50;
    double t_min = 0.0;
    double t_max = 6.283185307179586;
    int t_count = 64;

    bool operator==(const SweepSection&) const = default;
};

struct GridSection {
    int nx = 16;
    int ny = 16;

    bool operator==(const GridSection&) const = default;
};

struct FieldSection {
    double t = 0.0;

    bool operator==(const FieldSection&) const = default;
};

struct TrajectorySection {
    double x0 = 0.0;
    double y0 = 0.0;
    TrajectoryMethod method = TrajectoryMethod::closed_form;

    bool operator==(const TrajectorySection&) const = default;
};

struct SimulateSection {
    double dt = 0.0; // 0: largest step allowed by the stability bound
    double periods = 1.0;
    LateralBoundary lateral = LateralBoundary::periodic;
    SimInit init = SimInit::zero;
    bool forcing = true;
    int cadence = 1;
    std::vector<Vec2> probes;

    bool operator==(const SimulateSection&) const = default;
};

struct KineticSection {
    std::string particles;
    std::size_t variable = 1; // 1-based, u1 .. ul
    Deposition deposition = Deposition::nearest_cell;
    double floor = 0.0; // 0: default fraction of the mean density

    bool operator==(const KineticSection&) const = default;
};

struct RunConfig {
    ModelParams model;
    ModeSection mode;
    SweepSection sweep;
    GridSection grid;
    FieldSection field;
    TrajectorySection trajectory;
    SimulateSection simulate;
    KineticSection kinetic;

    /// "section.key" -> 1-based line of the assignment; not part of equality.
    std::map<std::string, int> lines;

    bool operator==(const RunConfig& o) const;
    int line_of(const std::string& key) const;
};

struct ConfigIssue {
    int line = 0;
    ErrorCode code = ErrorCode::config_syntax;
    std::string message;
};

/// Thrown by parse_config with every problem found, in line order.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);

    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Parses and validates sign, finiteness and common-border constraints.
/// The secure-profits bound b > g_x X + g_y Y is left to the commands that
/// need it (see require_secure_profits).
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Throws ConfigError pointing at the `b` line when b <= g_x X + g_y Y.
void require_secure_profits(const RunConfig& cfg);

std::string render_config(const RunConfig& cfg);

} // namespace riskwave

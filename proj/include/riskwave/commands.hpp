#pragma once

#include "riskwave/config.hpp"
#include "riskwave/dispersion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riskwave {

enum class Command { validate, steady, dispersion, modes, field, aggregate, trajectory, simulate, kinetic };

const char* to_string(Command c);
std::optional<Command> parse_command(const std::string& name);
const std::vector<std::string>& command_names();

struct RunOptions {
    std::string out_dir = ".";
    std::string base_dir = "."; // relative input paths resolve against this
    std::optional<WeightPolicy> policy;
    std::optional<double> tol;
};

struct RunResult {
    std::vector<std::string> files; // CSV outputs, each with a .meta.json sidecar
    std::vector<std::string> warnings;
};

/// Exit status for a failure code: 2 configuration, 3 numerical, 4 I/O.
int exit_code(ErrorCode code);

/// Runs one command. Library errors propagate as riskwave::Error.
RunResult execute(const RunConfig& cfg, Command command, const RunOptions& options = {});

/// The mode described by the [mode] section.
WaveMode build_mode(const RunConfig& cfg);

} // namespace riskwave

#include "riskwave/commands.hpp"
#include "riskwave/config.hpp"
#include "riskwave/version.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
    using namespace riskwave;

    CLI::App app{"Surface-like waves on a two-risk economic domain"};
    app.set_version_flag("--version", version);

    std::string command, config_path, out_dir = ".", policy_name;
    double tol = 0.0;
    app.add_option("command", command, "validate | steady | dispersion | modes | field | aggregate | trajectory | "
                                       "simulate | kinetic")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("--config", config_path, "key = value configuration file")->required();
    app.add_option("--out", out_dir, "output directory");
    auto* policy_opt = app.add_option("--policy", policy_name, "weight policy for the two free profile weights")
                           ->check(CLI::IsMember({"minimal-norm", "pin-zero"}));
    auto* tol_opt = app.add_option("--tol", tol, "root classification tolerance")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunOptions opt;
    opt.out_dir = out_dir;
    opt.base_dir = std::filesystem::path(config_path).parent_path().string();
    if (opt.base_dir.empty()) opt.base_dir = ".";
    if (*policy_opt)
        opt.policy = policy_name == "pin-zero" ? WeightPolicy::pin_secondary_zero : WeightPolicy::minimal_norm;
    if (*tol_opt) opt.tol = tol;

    try {
        const auto cfg = load_config(config_path);
        const auto result = execute(cfg, *parse_command(command), opt);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
        for (const auto& f : result.files) std::cout << f << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << config_path << ":\n" << e.what() << '\n';
        return exit_code(e.code());
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

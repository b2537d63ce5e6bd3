#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cqed/commands.hpp"
#include "cqed/config.hpp"
#include "cqed/error.hpp"
#include "cqed/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct Options {
    std::string config;
    std::string out;
    std::string profile;
    int workers = cqed::default_workers();
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config, "Run configuration (INI)")->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out, "Output directory (overrides [output] dir)");
    cmd->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--profile", opt.profile, "Built-in parameter profile")
        ->check(CLI::IsMember({"paper-device"}));
}

cqed::RunConfig load(const Options& opt) {
    cqed::RunConfig rc = opt.config.empty() ? cqed::parse_config("", opt.profile)
                                            : cqed::load_config(opt.config, opt.profile);
    if (!opt.out.empty()) rc.out_dir = opt.out;
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state spectroscopy of a driven transmon-resonator system"};
    app.require_subcommand(1);
    Options opt;
    CLI::App* spectrum = app.add_subcommand("spectrum", "Probe spectrum and photon statistics");
    CLI::App* map2d = app.add_subcommand("map2d", "Two-tone map over probe and coupler frequency");
    CLI::App* splitting = app.add_subcommand("splitting-curve", "Autler-Townes gap versus coupler drive");
    CLI::App* validate = app.add_subcommand("validate", "Check model invariants at the configured point");
    for (CLI::App* c : {spectrum, map2d, splitting, validate}) add_common(c, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const cqed::RunConfig rc = load(opt);
        if (*spectrum) cqed::cmd_spectrum(rc, opt.workers, std::cout);
        if (*map2d) cqed::cmd_map2d(rc, opt.workers, std::cout);
        if (*splitting) cqed::cmd_splitting_curve(rc, opt.workers, std::cout);
        if (*validate && !cqed::cmd_validate(rc, opt.workers, std::cout)) return kExitNumerical;
    } catch (const cqed::ConfigError& e) {
        std::cerr << "config error: " << (opt.config.empty() ? "" : opt.config + ": ") << e.what() << '\n';
        return kExitConfig;
    } catch (const cqed::ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const cqed::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

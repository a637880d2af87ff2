#include "commands.hpp"
#include "output.hpp"

#include "htype/errors.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using namespace htype::cli;

struct Flags {
    std::string config;
    std::optional<std::string> out;
    std::optional<int> jobs;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::vector<std::string> only;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("-c,--config", f.config, "YAML or JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("-o,--out", f.out, "Output directory (env HTYPE_OUT)");
    sub->add_option("-j,--jobs", f.jobs, "Worker threads (env HTYPE_JOBS)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", f.seed, "Random seed");
    sub->add_option("--tol", f.tol, "Default tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--only", f.only, "Suites (verify) or commands (report) to run")->delimiter(',');
}

int run(const std::string& command, const Flags& f, std::optional<double> perturbation) {
    RunConfig cfg = load_config(f.config);
    apply_overrides(cfg, Overrides{f.out, f.jobs, f.seed, f.tol, f.only, perturbation});
    std::filesystem::create_directories(cfg.out);
    if (command == "verify") return run_verify(cfg, std::cout);
    ResultCache cache(std::filesystem::path(cfg.out) / "cache");
    if (command == "report") return run_report(cfg, cache, std::cout);
    return emit(command, fetch(command, cfg, cache), cfg, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg-type groups: construction, spectra, curvature, wave operators, isospectrality"};
    app.require_subcommand(1);
    Flags flags;
    bool inject = false;
    double epsilon = 1e-3;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"build-group", "Construct the group and report dimensions and H-type residuals"},
        {"spectrum", "Explicit or collocation spectra of the reduced radial operator"},
        {"curvature", "Closed-form versus numeric connection, curvature and Ricci"},
        {"verify", "Run the invariant suites"},
        {"isospec", "Compare reduced one-pole spectra of two groups"},
        {"waves", "Residuals of the static and expanding wave operators"},
        {"report", "Markdown and JSON digest over cached command results"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, flags);
        if (name == "verify") {
            sub->add_flag("--inject-failure", inject, "Perturb one generator to force a curated failure");
            sub->add_option("--perturbation", epsilon, "Size of the injected perturbation")
                ->check(CLI::PositiveNumber);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, flags, inject ? std::optional<double>(epsilon) : std::nullopt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const htype::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const htype::ResourceError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const htype::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

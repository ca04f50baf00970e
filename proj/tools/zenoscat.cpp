#include "zenoscat/config.hpp"
#include "zenoscat/errors.hpp"
#include "zenoscat/run.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Floquet coupled-channel scattering in magnetic pulse trains"};
    app.set_version_flag("--version", zenoscat::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    for (const auto& mode : zenoscat::run_modes()) {
        auto* sub = app.add_subcommand(mode, "run the " + mode + " workflow");
        sub->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "random seed (overrides the config)");
        sub->add_option("--out", out, "output directory (overrides the config)");
        sub->add_option("--threads", threads, "worker threads (overrides the config)")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string mode = app.get_subcommands().front()->get_name();
    try {
        auto config = zenoscat::load_config(config_path);
        config.mode = mode;
        if (seed) config.seed = config.ga.seed = *seed;
        if (out) config.out_dir = *out;
        if (threads) config.threads = config.ga.threads = *threads;
        const auto record = zenoscat::run(config);
        zenoscat::write_outputs(record, config.out_dir);
        for (const auto& w : record.warnings) std::cerr << "warning: " << w << '\n';
        std::cout << record.results.dump(2) << '\n';
        return 0;
    } catch (const zenoscat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const zenoscat::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure (" << mode << "): " << e.what() << '\n';
        return 3;
    }
}

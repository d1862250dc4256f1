#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "commands.hpp"
#include "subfpt/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"extreme statistics of subdiffusive first-passage times"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int threads = 0;

    struct Command {
        const char* name;
        const char* help;
        void (*run)(const subfpt::ExperimentConfig&);
    };
    const Command commands[] = {
        {"fig2-left", "relative error of E[T_N] approximations over N",
         subfpt::run_fig2_left},
        {"fig2-right", "rescaled density of T_N against the Gumbel limit",
         subfpt::run_fig2_right},
        {"sample", "Monte Carlo draws of the k-th fastest passage time",
         subfpt::run_sample},
        {"survival", "P(tau > t) on a log-spaced grid", subfpt::run_survival},
        {"asymptotics", "short-time constants, lifts and Gumbel sequences",
         subfpt::run_asymptotics},
        {"msd-check", "sampled mean squared displacement against 2K t^a/G(1+a)",
         subfpt::run_msd_check},
    };

    for (const Command& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", config_path, "config file (key = value blocks)");
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--threads", threads, "cap the worker pool (0 = default)");
        sub->add_option("--out", out_path, "output file (default stdout)");
    }

    CLI11_PARSE(app, argc, argv);
    CLI::App* active = app.get_subcommands().front();

    try {
        subfpt::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = subfpt::parse_config_file(config_path);
        if (active->count("--seed")) cfg.seed = seed;
        if (active->count("--threads")) {
            if (threads < 0) throw subfpt::ConfigError("--threads must be >= 0");
            cfg.threads = threads;
        }
        if (active->count("--out")) cfg.output_path = out_path;
#ifdef _OPENMP
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
        for (const Command& c : commands) {
            if (active->get_name() == c.name) {
                c.run(cfg);
                return 0;
            }
        }
        std::cerr << "unknown command\n";
        return 2;
    } catch (const subfpt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

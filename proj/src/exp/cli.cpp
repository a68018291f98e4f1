#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "relmas/exp/commands.hpp"

namespace relmas::exp {

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"RELMAS: learned scheduling experiments for multi-accelerator "
                 "DNN serving"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;

    struct SubDef {
        const char* name;
        const char* desc;
        CommandOutputs (*fn)(const ExperimentConfig&);
    };
    const SubDef defs[] = {
        {"gen-workload", "Generate a workload trace (JSON lines)", cmd_gen_workload},
        {"train", "Train the RL scheduler; writes checkpoint and learning curves",
         cmd_train},
        {"compare", "Run every selected scheduler on identical traces", cmd_compare},
        {"sweep-bandwidth", "Sweep DRAM bandwidth and chart normalized SLA",
         cmd_sweep_bandwidth},
        {"overhead", "Policy energy overhead across hidden sizes and periods",
         cmd_overhead},
    };
    for (const auto& d : defs) {
        CLI::App* sub = app.add_subcommand(d.name, d.desc);
        sub->add_option("--config", config_path, "experiment JSON document")
            ->required();
        sub->add_option("--seed", seed_override,
                        "pin every stochastic stream to this seed");
        sub->add_option("--out", out_override, "output directory override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        ExperimentConfig cfg = load_experiment_config(config_path);
        if (sub->count("--seed") > 0) pin_seed(cfg, seed_override);
        if (sub->count("--out") > 0) {
            cfg.out_dir = out_override;
            cfg.validate();
        }
        CommandOutputs outs;
        for (const auto& d : defs)
            if (sub->get_name() == d.name) outs = d.fn(cfg);
        for (const auto& f : outs.files) std::cout << f << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace relmas::exp

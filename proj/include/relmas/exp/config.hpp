#ifndef RELMAS_EXP_CONFIG_HPP
#define RELMAS_EXP_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/cost.hpp"
#include "relmas/rl/ddpg.hpp"
#include "relmas/sched.hpp"
#include "relmas/workload.hpp"

namespace relmas::exp {

// One experiment = one JSON document; every key has a default. Environment
// variables named RELMAS_<KEY> (upper-cased key) override single keys: the
// value is parsed as JSON when possible, otherwise taken as a bare string.
// File references resolve relative to the config file's directory.
struct ExperimentConfig {
    MasConfig mas;
    CostModelParams cost_params;
    std::vector<DnnModelDesc> models;
    CostTable table;

    TraceParams trace;
    std::vector<std::string> schedulers;
    std::int64_t t_s = 50;
    std::vector<std::uint64_t> seeds;
    std::int64_t bandwidth = 0;  // engine override; 0 keeps the package value
    std::vector<std::int64_t> bandwidths;
    std::vector<int> hidden_sizes;
    std::vector<std::int64_t> periods;

    std::string out_dir = "out";
    std::string checkpoint;  // empty = <out_dir>/relmas.ckpt
    rl::TrainerConfig trainer;
    std::int64_t checkpoint_every = 25;
    int eval_traces = 3;
    GaParams ga;
    PremaParams prema;

    std::string checkpoint_file() const;
    std::int64_t effective_bandwidth() const;
    // Name of the single QoS level the mix selects, or "mixed".
    std::string qos_label() const;
    void validate() const;
};

extern const std::vector<std::string> kKnownSchedulers;

ExperimentConfig experiment_config_from_json_text(const std::string& text,
                                                  const std::string& base_dir,
                                                  bool env_overrides);
ExperimentConfig load_experiment_config(const std::string& path);

// Pins every stochastic stream: scenario seed list, trace seed, trainer seed.
void pin_seed(ExperimentConfig& cfg, std::uint64_t seed);

}  // namespace relmas::exp

#endif

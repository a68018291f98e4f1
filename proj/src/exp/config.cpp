#include "relmas/exp/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>

#include "json.hpp"
#include "relmas/exp/csv.hpp"

namespace relmas::exp {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string> kKnownSchedulers = {"fcfs-h", "prema-h", "herald",
                                                   "magma",  "relmas",  "random"};

namespace {

void require_keys(const json& j, const char* what,
                  std::initializer_list<const char*> known) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be an object");
    for (const auto& [key, _] : j.items()) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return key == k;
            }) == known.end())
            throw ConfigError(std::string("unknown ") + what + " key '" + key + "'");
    }
}

template <typename T>
void read_num(const json& j, const char* key, T& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number())
        throw ConfigError(std::string("'") + key + "' must be a number");
    out = it->get<T>();
}

void read_str(const json& j, const char* key, std::string& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_string())
        throw ConfigError(std::string("'") + key + "' must be a string");
    out = it->get<std::string>();
}

template <typename T>
void read_num_list(const json& j, const char* key, std::vector<T>& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_array())
        throw ConfigError(std::string("'") + key + "' must be an array of numbers");
    out.clear();
    for (const auto& v : *it) {
        if (!v.is_number())
            throw ConfigError(std::string("'") + key + "' must contain only numbers");
        out.push_back(v.get<T>());
    }
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (fs::path(base_dir) / p).string();
}

void check_file_exists(const std::string& path, const char* key) {
    if (!fs::exists(path))
        throw ConfigError(std::string("'") + key + "' references missing file '" +
                          path + "'");
}

MasConfig mas_from_json(const json& j) {
    require_keys(j, "mas", {"dram_bandwidth_bytes_per_cycle", "nop_energy_pj_per_bit",
                            "sas"});
    MasConfig mas;
    mas.sas.clear();
    read_num(j, "dram_bandwidth_bytes_per_cycle", mas.dram_bandwidth_bytes_per_cycle);
    read_num(j, "nop_energy_pj_per_bit", mas.nop_energy_pj_per_bit);
    auto it = j.find("sas");
    if (it == j.end() || !it->is_array() || it->empty())
        throw ConfigError("mas must list at least one sub-accelerator in 'sas'");
    int id = 0;
    for (const auto& sj : *it) {
        require_keys(sj, "sa",
                     {"name", "dataflow", "num_pes", "macs_per_pe",
                      "global_buffer_bytes", "pe_buffer_bytes", "frequency_hz"});
        SaSpec sa;
        sa.id = id++;
        read_str(sj, "name", sa.name);
        std::string df;
        read_str(sj, "dataflow", df);
        if (!df.empty()) sa.dataflow = dataflow_from_name(df);
        read_num(sj, "num_pes", sa.num_pes);
        read_num(sj, "macs_per_pe", sa.macs_per_pe);
        read_num(sj, "global_buffer_bytes", sa.global_buffer_bytes);
        read_num(sj, "pe_buffer_bytes", sa.pe_buffer_bytes);
        read_num(sj, "frequency_hz", sa.frequency_hz);
        mas.sas.push_back(std::move(sa));
    }
    return mas;
}

CostModelParams cost_params_from_json(const json& j) {
    require_keys(j, "cost_params",
                 {"util_row_stationary", "util_weight_stationary",
                  "e_mac_row_stationary_pj", "e_mac_weight_stationary_pj",
                  "e_byte_pj"});
    CostModelParams p;
    read_str(j, "util_row_stationary", p.util_row_stationary);
    read_str(j, "util_weight_stationary", p.util_weight_stationary);
    read_num(j, "e_mac_row_stationary_pj", p.e_mac_row_stationary_pj);
    read_num(j, "e_mac_weight_stationary_pj", p.e_mac_weight_stationary_pj);
    read_num(j, "e_byte_pj", p.e_byte_pj);
    return p;
}

rl::TrainerConfig trainer_from_json(const json& j) {
    require_keys(j, "trainer",
                 {"hidden_size", "actor_lr", "critic_lr", "discount_factor",
                  "soft_update_tau", "buffer_capacity", "batch_size",
                  "warmup_steps", "noise_sigma", "noise_decay", "episodes", "seed",
                  "feature_cap", "reward"});
    rl::TrainerConfig t;
    read_num(j, "hidden_size", t.h);
    read_num(j, "actor_lr", t.actor_lr);
    read_num(j, "critic_lr", t.critic_lr);
    read_num(j, "discount_factor", t.discount_factor);
    read_num(j, "soft_update_tau", t.soft_update_tau);
    read_num(j, "buffer_capacity", t.buffer_capacity);
    read_num(j, "batch_size", t.batch_size);
    read_num(j, "warmup_steps", t.warmup_steps);
    read_num(j, "noise_sigma", t.noise_sigma);
    read_num(j, "noise_decay", t.noise_decay);
    read_num(j, "episodes", t.episodes);
    read_num(j, "seed", t.seed);
    read_num(j, "feature_cap", t.feature_cap);
    if (auto it = j.find("reward"); it != j.end()) {
        require_keys(*it, "reward", {"alpha", "beta", "gamma", "delta"});
        read_num(*it, "alpha", t.reward.alpha);
        read_num(*it, "beta", t.reward.beta);
        read_num(*it, "gamma", t.reward.gamma_slack);
        read_num(*it, "delta", t.reward.delta);
    }
    return t;
}

GaParams ga_from_json(const json& j) {
    require_keys(j, "ga",
                 {"population", "generations", "elite", "tournament_k",
                  "crossover_rate", "mutation_sigma", "sa_resample_rate", "seed"});
    GaParams g;
    read_num(j, "population", g.population);
    read_num(j, "generations", g.generations);
    read_num(j, "elite", g.elite);
    read_num(j, "tournament_k", g.tournament_k);
    read_num(j, "crossover_rate", g.crossover_rate);
    read_num(j, "mutation_sigma", g.mutation_sigma);
    read_num(j, "sa_resample_rate", g.sa_resample_rate);
    read_num(j, "seed", g.seed);
    return g;
}

PremaParams prema_from_json(const json& j) {
    require_keys(j, "prema", {"base_token", "slope", "threshold"});
    PremaParams p;
    read_num(j, "base_token", p.base_token);
    read_num(j, "slope", p.slope);
    read_num(j, "threshold", p.threshold);
    return p;
}

const std::initializer_list<const char*> kTopLevelKeys = {
    "workload",       "duration_cycles", "pareto_shape",
    "pareto_scale_cycles", "qos_medium_factor", "qos_mix",
    "trace_seed",     "schedulers",      "t_s",
    "seeds",          "bandwidth",       "bandwidths",
    "hidden_sizes",   "periods",         "out_dir",
    "checkpoint",     "checkpoint_every", "eval_traces",
    "trainer",        "ga",              "prema",
    "mas_file",       "models_file",     "cost_table_file",
    "cost_params"};

void apply_env_overrides(json& j) {
    for (const char* key : kTopLevelKeys) {
        std::string env = "RELMAS_";
        for (const char* p = key; *p; ++p)
            env += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
        const char* val = std::getenv(env.c_str());
        if (!val) continue;
        json parsed = json::parse(val, nullptr, false);
        j[key] = parsed.is_discarded() ? json(std::string(val)) : parsed;
    }
}

}  // namespace

std::string ExperimentConfig::checkpoint_file() const {
    if (!checkpoint.empty()) return checkpoint;
    return (fs::path(out_dir) / "relmas.ckpt").string();
}

std::int64_t ExperimentConfig::effective_bandwidth() const {
    return bandwidth > 0 ? bandwidth : mas.dram_bandwidth_bytes_per_cycle;
}

std::string ExperimentConfig::qos_label() const {
    const QosMix& m = trace.qos_mix;
    int positive = (m.low > 0) + (m.medium > 0) + (m.high > 0);
    if (positive == 1) {
        if (m.low > 0) return qos_level_name(QosLevel::Low);
        if (m.medium > 0) return qos_level_name(QosLevel::Medium);
        return qos_level_name(QosLevel::High);
    }
    return "mixed";
}

void ExperimentConfig::validate() const {
    mas.validate();
    trace.validate();
    validate_trainer_config(trainer);
    if (seeds.empty()) throw ConfigError("seeds must be non-empty");
    if (schedulers.empty()) throw ConfigError("schedulers must be non-empty");
    for (const auto& s : schedulers)
        if (std::find(kKnownSchedulers.begin(), kKnownSchedulers.end(), s) ==
            kKnownSchedulers.end())
            throw ConfigError("unknown scheduler '" + s + "'");
    if (t_s < 1) throw ConfigError("t_s must be >= 1");
    if (bandwidth < 0) throw ConfigError("bandwidth must be >= 0");
    for (auto b : bandwidths)
        if (b < 1) throw ConfigError("bandwidths entries must be >= 1");
    for (auto h : hidden_sizes)
        if (h < 2 || h % 2 != 0)
            throw ConfigError("hidden_sizes entries must be even and >= 2");
    for (auto p : periods)
        if (p < 1) throw ConfigError("periods entries must be >= 1");
    if (checkpoint_every < 1) throw ConfigError("checkpoint_every must be >= 1");
    if (eval_traces < 0) throw ConfigError("eval_traces must be >= 0");
    if (out_dir.empty()) throw ConfigError("out_dir must be non-empty");
}

ExperimentConfig experiment_config_from_json_text(const std::string& text,
                                                  const std::string& base_dir,
                                                  bool env_overrides) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config is not valid JSON");
    require_keys(j, "config", kTopLevelKeys);
    if (env_overrides) apply_env_overrides(j);

    ExperimentConfig cfg;

    if (auto it = j.find("mas_file"); it != j.end()) {
        std::string path;
        read_str(j, "mas_file", path);
        path = resolve(base_dir, path);
        check_file_exists(path, "mas_file");
        json mj = json::parse(read_text_file(path), nullptr, false);
        if (mj.is_discarded())
            throw ConfigError("mas_file '" + path + "' is not valid JSON");
        cfg.mas = mas_from_json(mj);
    } else {
        cfg.mas = default_mas_config();
    }

    if (auto it = j.find("cost_params"); it != j.end())
        cfg.cost_params = cost_params_from_json(*it);

    if (auto it = j.find("models_file"); it != j.end()) {
        std::string path;
        read_str(j, "models_file", path);
        path = resolve(base_dir, path);
        check_file_exists(path, "models_file");
        cfg.models = load_models_json_file(path);
    } else {
        cfg.models = builtin_models();
    }

    if (auto it = j.find("cost_table_file"); it != j.end()) {
        std::string path;
        read_str(j, "cost_table_file", path);
        path = resolve(base_dir, path);
        check_file_exists(path, "cost_table_file");
        cfg.table = load_cost_table(path, cfg.mas, cfg.models, false, cfg.cost_params);
    } else {
        cfg.table = build_analytic_table(cfg.models, cfg.mas, cfg.cost_params);
    }

    std::string workload = "mixed";
    read_str(j, "workload", workload);
    cfg.trace.workload = make_workload_set(workload_set_from_name(workload), cfg.models);
    cfg.trace.duration_cycles = 50000;
    cfg.trace.pareto_scale_cycles = 2000.0;
    read_num(j, "duration_cycles", cfg.trace.duration_cycles);
    read_num(j, "pareto_shape", cfg.trace.pareto_shape);
    read_num(j, "pareto_scale_cycles", cfg.trace.pareto_scale_cycles);
    read_num(j, "qos_medium_factor", cfg.trace.qos_medium_factor);
    if (auto it = j.find("qos_mix"); it != j.end()) {
        require_keys(*it, "qos_mix", {"low", "medium", "high"});
        QosMix mix{0.0, 0.0, 0.0};
        read_num(*it, "low", mix.low);
        read_num(*it, "medium", mix.medium);
        read_num(*it, "high", mix.high);
        cfg.trace.qos_mix = mix;
    }

    cfg.schedulers = {"fcfs-h", "prema-h", "herald", "magma", "random"};
    if (auto it = j.find("schedulers"); it != j.end()) {
        if (!it->is_array())
            throw ConfigError("'schedulers' must be an array of names");
        cfg.schedulers.clear();
        for (const auto& s : *it) {
            if (!s.is_string())
                throw ConfigError("'schedulers' must contain only strings");
            cfg.schedulers.push_back(s.get<std::string>());
        }
    }

    read_num(j, "t_s", cfg.t_s);
    cfg.seeds = {1};
    read_num_list(j, "seeds", cfg.seeds);
    read_num(j, "bandwidth", cfg.bandwidth);
    cfg.bandwidths = {16, 12, 8, 4};
    read_num_list(j, "bandwidths", cfg.bandwidths);
    cfg.hidden_sizes = {64, 128, 256};
    read_num_list(j, "hidden_sizes", cfg.hidden_sizes);
    cfg.periods = {100, 50, 25};
    read_num_list(j, "periods", cfg.periods);
    read_str(j, "out_dir", cfg.out_dir);
    read_str(j, "checkpoint", cfg.checkpoint);
    if (!cfg.checkpoint.empty()) cfg.checkpoint = resolve(base_dir, cfg.checkpoint);
    read_num(j, "checkpoint_every", cfg.checkpoint_every);
    read_num(j, "eval_traces", cfg.eval_traces);

    if (auto it = j.find("trainer"); it != j.end()) cfg.trainer = trainer_from_json(*it);
    if (auto it = j.find("ga"); it != j.end()) cfg.ga = ga_from_json(*it);
    if (auto it = j.find("prema"); it != j.end()) cfg.prema = prema_from_json(*it);

    cfg.trace.seed = cfg.seeds.front();
    read_num(j, "trace_seed", cfg.trace.seed);

    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::string base = fs::path(path).parent_path().string();
    return experiment_config_from_json_text(read_text_file(path), base, true);
}

void pin_seed(ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.seeds = {seed};
    cfg.trace.seed = seed;
    cfg.trainer.seed = seed;
}

}  // namespace relmas::exp

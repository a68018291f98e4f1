#include "relmas/exp/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <tuple>

#include "json.hpp"
#include "relmas/exp/svg.hpp"
#include "relmas/par.hpp"
#include "relmas/rl/checkpoint.hpp"
#include "relmas/rl/ddpg.hpp"
#include "relmas/rl/overhead.hpp"
#include "relmas/rng.hpp"
#include "relmas/sim.hpp"

namespace relmas::exp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_out_dir(const ExperimentConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec && !fs::is_directory(cfg.out_dir))
        throw ConfigError("cannot create out_dir '" + cfg.out_dir + "'");
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

RequestTrace trace_for_seed(const ExperimentConfig& cfg, std::uint64_t seed) {
    TraceParams p = cfg.trace;
    p.seed = seed;
    return generate_trace(p, cfg.table);
}

std::optional<rl::TrainState> maybe_load_relmas(const ExperimentConfig& cfg) {
    if (std::find(cfg.schedulers.begin(), cfg.schedulers.end(), "relmas") ==
        cfg.schedulers.end())
        return std::nullopt;
    std::string path = cfg.checkpoint_file();
    if (!fs::exists(path))
        throw ConfigError("scheduler 'relmas' needs a checkpoint; expected '" + path +
                          "' (run the train command first)");
    rl::TrainState state = rl::load_checkpoint(path);
    if (state.model.num_sas != cfg.mas.num_sas())
        throw ConfigError("checkpoint '" + path + "' was trained for " +
                          std::to_string(state.model.num_sas) +
                          " SAs but the package has " +
                          std::to_string(cfg.mas.num_sas()));
    return state;
}

std::unique_ptr<SchedulerPolicy> make_policy(const ExperimentConfig& cfg,
                                             const std::string& name,
                                             std::uint64_t run_seed,
                                             const rl::TrainState* relmas_state) {
    if (name == "fcfs-h") return make_fcfs_scheduler();
    if (name == "prema-h") return make_prema_scheduler(cfg.prema);
    if (name == "herald") return make_herald_scheduler();
    if (name == "magma") {
        GaParams p = cfg.ga;
        p.seed = mix_seed(p.seed, run_seed);
        return make_magma_scheduler(p);
    }
    if (name == "random") return make_random_scheduler(mix_seed(run_seed, 0xA2D0));
    if (name == "relmas") {
        if (!relmas_state) throw SimError("relmas policy requested without a checkpoint");
        return rl::make_relmas_scheduler(relmas_state->model.actor,
                                         relmas_state->model.norms);
    }
    throw ConfigError("unknown scheduler '" + name + "'");
}

double cycles_to_ms(const MasConfig& mas, std::int64_t cycles) {
    double hz = mas.sas.empty() ? 1e9 : mas.sas.front().frequency_hz;
    return static_cast<double>(cycles) / hz * 1000.0;
}

ResultRow run_scenario(const ExperimentConfig& cfg, const std::string& scheduler,
                       std::uint64_t seed, const RequestTrace& trace,
                       const rl::TrainState* relmas_state) {
    auto policy = make_policy(cfg, scheduler, seed, relmas_state);
    RunResult rr = run_trace(cfg.mas, cfg.table, trace, *policy, cfg.t_s,
                             cfg.bandwidth);
    ResultRow row;
    row.scheduler = scheduler;
    row.workload = workload_set_name(cfg.trace.workload.name);
    row.qos_level = cfg.qos_label();
    row.bandwidth = cfg.effective_bandwidth();
    row.seed = seed;
    row.sla_rate = rr.metrics.sla_satisfaction_rate;
    row.misses = rr.metrics.jobs_missed();
    row.energy_pj = rr.metrics.total_energy_pj;
    row.makespan = rr.metrics.makespan;
    row.runtime_ms = cycles_to_ms(cfg.mas, rr.metrics.makespan);
    return row;
}

json qos_mix_json(const QosMix& m) {
    return json{{"low", m.low}, {"medium", m.medium}, {"high", m.high}};
}

json trainer_json(const rl::TrainerConfig& t) {
    return json{{"hidden_size", t.h},
                {"actor_lr", t.actor_lr},
                {"critic_lr", t.critic_lr},
                {"discount_factor", t.discount_factor},
                {"soft_update_tau", t.soft_update_tau},
                {"buffer_capacity", t.buffer_capacity},
                {"batch_size", t.batch_size},
                {"warmup_steps", t.warmup_steps},
                {"noise_sigma", t.noise_sigma},
                {"noise_decay", t.noise_decay},
                {"episodes", t.episodes},
                {"seed", t.seed},
                {"feature_cap", t.feature_cap},
                {"reward",
                 {{"alpha", t.reward.alpha},
                  {"beta", t.reward.beta},
                  {"gamma", t.reward.gamma_slack},
                  {"delta", t.reward.delta}}}};
}

int designated_overhead_sa(const MasConfig& mas) {
    for (const auto& sa : mas.sas)
        if (sa.dataflow == Dataflow::WeightStationary) return sa.id;
    return 0;
}

rl::OverheadConstants overhead_constants(const ExperimentConfig& cfg,
                                         double workload_pj) {
    rl::OverheadConstants c;
    for (const auto& sa : cfg.mas.sas)
        c.sa_mac_pj.push_back(sa.dataflow == Dataflow::RowStationary
                                  ? cfg.cost_params.e_mac_row_stationary_pj
                                  : cfg.cost_params.e_mac_weight_stationary_pj);
    c.dram_pj_per_byte = cfg.cost_params.e_byte_pj;
    c.workload_energy_pj = workload_pj;
    return c;
}

}  // namespace

CommandOutputs cmd_gen_workload(const ExperimentConfig& cfg) {
    ensure_out_dir(cfg);
    RequestTrace trace = generate_trace(cfg.trace, cfg.table);
    json hdr{{"seed", cfg.trace.seed},
             {"workload", workload_set_name(cfg.trace.workload.name)},
             {"duration_cycles", cfg.trace.duration_cycles},
             {"pareto_shape", cfg.trace.pareto_shape},
             {"pareto_scale_cycles", cfg.trace.pareto_scale_cycles},
             {"qos_medium_factor", cfg.trace.qos_medium_factor},
             {"qos_mix", qos_mix_json(cfg.trace.qos_mix)},
             {"jobs", trace.jobs.size()}};
    std::string text = "# " + hdr.dump() + "\n" + trace_to_jsonl(trace, cfg.table);
    std::string path =
        join(cfg.out_dir, std::string("trace_") +
                              workload_set_name(cfg.trace.workload.name) + "_seed" +
                              std::to_string(cfg.trace.seed) + ".jsonl");
    write_text_file(path, text);
    return {{path}};
}

CommandOutputs cmd_train(const ExperimentConfig& cfg) {
    ensure_out_dir(cfg);
    const rl::TrainerConfig& tcfg = cfg.trainer;
    rl::NormConstants norms{cfg.t_s, cfg.effective_bandwidth(), tcfg.feature_cap};
    std::string ckpt = cfg.checkpoint_file();

    rl::TrainState state;
    if (fs::exists(ckpt)) {
        state = rl::load_checkpoint(ckpt);
        if (state.model.num_sas != cfg.mas.num_sas())
            throw ConfigError("checkpoint '" + ckpt + "' was trained for " +
                              std::to_string(state.model.num_sas) +
                              " SAs but the package has " +
                              std::to_string(cfg.mas.num_sas()));
        if (state.model.actor.h != tcfg.h)
            throw ConfigError("checkpoint '" + ckpt + "' has hidden size " +
                              std::to_string(state.model.actor.h) +
                              " but the trainer asks for " + std::to_string(tcfg.h));
    } else {
        state = rl::make_initial_train_state(tcfg, cfg.mas.num_sas(), norms);
    }

    rl::TrainEnv env{cfg.mas, cfg.table, cfg.t_s,
                     [params = cfg.trace, table = cfg.table](std::int64_t ep) {
                         TraceParams p = params;
                         p.seed = mix_seed(params.seed,
                                           0xE9150DE + static_cast<std::uint64_t>(ep));
                         return generate_trace(p, table);
                     },
                     {}};
    for (int i = 0; i < cfg.eval_traces; ++i) {
        TraceParams p = cfg.trace;
        p.seed = mix_seed(cfg.trace.seed, 0xE7A1 + static_cast<std::uint64_t>(i));
        env.eval_traces.push_back(generate_trace(p, cfg.table));
    }

    std::vector<rl::CurvePoint> curve;
    if (state.episode < tcfg.episodes) {
        auto on_episode = [&](const rl::TrainState& st, const rl::CurvePoint& pt) {
            if (pt.episode % cfg.checkpoint_every == 0) rl::save_checkpoint(ckpt, st);
        };
        curve = rl::ddpg_train(tcfg, env, state, on_episode);
    }
    rl::save_checkpoint(ckpt, state);

    json sidecar = trainer_json(tcfg);
    sidecar["num_sas"] = cfg.mas.num_sas();
    sidecar["norms"] = json{{"t_s", state.model.norms.t_s},
                            {"bandwidth", state.model.norms.bandwidth},
                            {"feature_cap", state.model.norms.cap}};
    sidecar["episodes_completed"] = state.episode;
    std::string sidecar_path = ckpt + ".json";
    write_text_file(sidecar_path, sidecar.dump(2) + "\n");

    std::vector<CurveRow> rows;
    for (const auto& pt : curve)
        rows.push_back({pt.episode, pt.mean_reward, pt.eval_sla});
    std::string curves_path = join(cfg.out_dir, "curves.csv");
    write_text_file(curves_path, write_curve_csv(rows));

    return {{ckpt, sidecar_path, curves_path}};
}

CommandOutputs cmd_compare(const ExperimentConfig& cfg) {
    ensure_out_dir(cfg);
    auto relmas_state = maybe_load_relmas(cfg);

    std::vector<RequestTrace> traces;
    for (auto seed : cfg.seeds) traces.push_back(trace_for_seed(cfg, seed));

    std::size_t n = cfg.schedulers.size() * cfg.seeds.size();
    std::vector<ResultRow> rows(n);
    par::for_each_index(n, par::default_policy(), [&](std::size_t i) {
        std::size_t si = i / cfg.seeds.size();
        std::size_t ki = i % cfg.seeds.size();
        rows[i] = run_scenario(cfg, cfg.schedulers[si], cfg.seeds[ki], traces[ki],
                               relmas_state ? &*relmas_state : nullptr);
    });
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.scheduler, a.seed) < std::tie(b.scheduler, b.seed);
    });

    std::string csv_path = join(cfg.out_dir, "compare.csv");
    write_text_file(csv_path, write_result_csv(rows));

    // Chart strictly from the file just written.
    auto parsed = parse_result_csv(read_text_file(csv_path));
    std::vector<std::string> groups;
    std::vector<std::uint64_t> seeds;
    for (const auto& r : parsed) {
        if (std::find(groups.begin(), groups.end(), r.scheduler) == groups.end())
            groups.push_back(r.scheduler);
        if (std::find(seeds.begin(), seeds.end(), r.seed) == seeds.end())
            seeds.push_back(r.seed);
    }
    std::sort(seeds.begin(), seeds.end());
    std::map<std::pair<std::string, std::uint64_t>, double> sla;
    for (const auto& r : parsed) sla[{r.scheduler, r.seed}] = r.sla_rate;
    std::vector<Series> series;
    for (auto seed : seeds) {
        Series s{"seed " + std::to_string(seed), {}};
        for (const auto& g : groups) {
            auto it = sla.find({g, seed});
            if (it == sla.end())
                throw SimError("compare results miss scheduler '" + g + "' seed " +
                               std::to_string(seed));
            s.values.push_back(it->second);
        }
        series.push_back(std::move(s));
    }
    std::string svg_path = join(cfg.out_dir, "compare_sla.svg");
    write_text_file(svg_path, grouped_bar_chart_svg("SLA satisfaction rate", groups,
                                                    series, "SLA rate"));
    return {{csv_path, svg_path}};
}

CommandOutputs cmd_sweep_bandwidth(const ExperimentConfig& cfg) {
    if (cfg.bandwidths.empty()) throw ConfigError("bandwidths must be non-empty");
    ensure_out_dir(cfg);
    auto relmas_state = maybe_load_relmas(cfg);
    auto bandwidths = sorted_unique(cfg.bandwidths);

    std::vector<RequestTrace> traces;
    for (auto seed : cfg.seeds) traces.push_back(trace_for_seed(cfg, seed));

    std::size_t n = cfg.schedulers.size() * bandwidths.size() * cfg.seeds.size();
    std::vector<double> sla(n, 0.0);
    par::for_each_index(n, par::default_policy(), [&](std::size_t i) {
        std::size_t si = i / (bandwidths.size() * cfg.seeds.size());
        std::size_t bi = (i / cfg.seeds.size()) % bandwidths.size();
        std::size_t ki = i % cfg.seeds.size();
        ExperimentConfig local = cfg;
        local.bandwidth = bandwidths[bi];
        ResultRow row = run_scenario(local, cfg.schedulers[si], cfg.seeds[ki],
                                     traces[ki],
                                     relmas_state ? &*relmas_state : nullptr);
        sla[i] = row.sla_rate;
    });

    std::vector<SweepRow> rows;
    for (std::size_t si = 0; si < cfg.schedulers.size(); ++si) {
        std::vector<double> means(bandwidths.size(), 0.0);
        for (std::size_t bi = 0; bi < bandwidths.size(); ++bi) {
            double sum = 0.0;
            for (std::size_t ki = 0; ki < cfg.seeds.size(); ++ki)
                sum += sla[(si * bandwidths.size() + bi) * cfg.seeds.size() + ki];
            means[bi] = sum / static_cast<double>(cfg.seeds.size());
        }
        double best = *std::max_element(means.begin(), means.end());
        for (std::size_t bi = 0; bi < bandwidths.size(); ++bi)
            rows.push_back({cfg.schedulers[si], bandwidths[bi], means[bi],
                            best > 0.0 ? means[bi] / best : 1.0});
    }
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.scheduler, a.bandwidth) < std::tie(b.scheduler, b.bandwidth);
    });

    std::string csv_path = join(cfg.out_dir, "sweep_bandwidth.csv");
    write_text_file(csv_path, write_sweep_csv(rows));

    auto parsed = parse_sweep_csv(read_text_file(csv_path));
    std::vector<double> xs;
    for (auto b : bandwidths) xs.push_back(static_cast<double>(b));
    std::vector<Series> series;
    for (const auto& r : parsed) {
        if (series.empty() || series.back().label != r.scheduler)
            series.push_back({r.scheduler, {}});
        series.back().values.push_back(r.normalized_sla);
    }
    std::string svg_path = join(cfg.out_dir, "sweep_bandwidth.svg");
    write_text_file(svg_path,
                    line_chart_svg("SLA vs DRAM bandwidth (normalized per scheduler)",
                                   xs, series, "bandwidth (bytes/cycle)",
                                   "normalized SLA"));
    return {{csv_path, svg_path}};
}

CommandOutputs cmd_overhead(const ExperimentConfig& cfg) {
    ensure_out_dir(cfg);
    auto hidden_sizes = sorted_unique(cfg.hidden_sizes);
    auto periods = sorted_unique(cfg.periods);
    if (hidden_sizes.empty()) throw ConfigError("hidden_sizes must be non-empty");
    if (periods.empty()) throw ConfigError("periods must be non-empty");

    RequestTrace trace = generate_trace(cfg.trace, cfg.table);
    int sa = designated_overhead_sa(cfg.mas);

    std::vector<OverheadRow> rows;
    for (auto period : periods) {
        auto base = make_fcfs_scheduler();
        rl::RecordingPolicy rec(*base);
        RunResult rr = run_trace(cfg.mas, cfg.table, trace, rec, period, cfg.bandwidth);
        double workload_pj = rr.metrics.total_energy_pj;
        if (workload_pj <= 0.0)
            throw ConfigError("overhead needs a non-empty workload (zero energy)");
        auto constants = overhead_constants(cfg, workload_pj);
        for (auto h : hidden_sizes) {
            auto res = rl::overhead_energy(h, cfg.mas.num_sas(), rec.lengths, sa,
                                           constants);
            rows.push_back({h, period, res.policy_pj, workload_pj, res.percent});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const OverheadRow& a, const OverheadRow& b) {
        return std::tie(a.hidden_size, a.period) < std::tie(b.hidden_size, b.period);
    });

    std::string csv_path = join(cfg.out_dir, "overhead.csv");
    write_text_file(csv_path, write_overhead_csv(rows));

    auto parsed = parse_overhead_csv(read_text_file(csv_path));
    std::vector<double> xs;
    for (auto p : periods) xs.push_back(static_cast<double>(p));
    std::vector<Series> series;
    for (const auto& r : parsed) {
        std::string label = "h=" + std::to_string(r.hidden_size);
        if (series.empty() || series.back().label != label)
            series.push_back({label, {}});
        series.back().values.push_back(r.overhead_percent);
    }
    std::string svg_path = join(cfg.out_dir, "overhead.svg");
    write_text_file(svg_path,
                    line_chart_svg("Policy energy overhead", xs, series,
                                   "scheduling period (cycles)", "overhead (%)"));
    return {{csv_path, svg_path}};
}

}  // namespace relmas::exp

#ifndef RELMAS_TESTS_SUPPORT_INSTANCES_HPP
#define RELMAS_TESTS_SUPPORT_INSTANCES_HPP

// Random small scheduling instances plus the engine-vs-oracle comparison
// used by both the unit tests and the acceptance checks.

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/cost.hpp"
#include "relmas/rng.hpp"
#include "relmas/sched.hpp"
#include "relmas/sim.hpp"
#include "relmas/workload.hpp"
#include "support/oracle.hpp"

namespace relmas::testsup {

struct RandomInstance {
    MasConfig mas;
    std::vector<DnnModelDesc> models;
    CostTable table;
    RequestTrace trace;
    std::int64_t t_s = 10;
    int policy_kind = 0;
    std::uint64_t policy_seed = 0;
};

inline MasConfig make_random_mas(Rng& rng, int max_sas) {
    MasConfig mas;
    int m = 1 + static_cast<int>(rng.uniform_int(max_sas));
    for (int i = 0; i < m; ++i) {
        SaSpec sa;
        sa.id = i;
        sa.name = "sa" + std::to_string(i);
        sa.dataflow = i % 2 == 0 ? Dataflow::RowStationary : Dataflow::WeightStationary;
        sa.num_pes = 1 + static_cast<std::int64_t>(rng.uniform_int(64));
        sa.macs_per_pe = 1;
        sa.global_buffer_bytes = 1024;
        sa.pe_buffer_bytes = 64;
        sa.frequency_hz = 1e9;
        mas.sas.push_back(sa);
    }
    mas.dram_bandwidth_bytes_per_cycle = 1 + static_cast<std::int64_t>(rng.uniform_int(20));
    return mas;
}

// M <= 3 SAs, <= 12 sub-jobs, per-layer costs <= 30 cycles, bandwidths in
// quarter-byte steps so contention rates are genuine non-dyadic rationals.
inline RandomInstance make_random_instance(Rng& rng) {
    MasConfig mas = make_random_mas(rng, 3);

    int n_models = 1 + static_cast<int>(rng.uniform_int(3));
    std::vector<DnnModelDesc> models;
    for (int i = 0; i < n_models; ++i) {
        DnnModelDesc m;
        m.model_id = i;
        m.name = "m" + std::to_string(i);
        int layers = 1 + static_cast<int>(rng.uniform_int(4));
        for (int l = 0; l < layers; ++l) {
            LayerDesc d;
            d.layer_id = l;
            d.macs = 1;
            m.layers.push_back(d);
        }
        models.push_back(m);
    }

    CostTable table(models, mas);
    for (int mi = 0; mi < n_models; ++mi)
        for (int l = 0; l < table.num_layers(mi); ++l)
            for (int s = 0; s < mas.num_sas(); ++s) {
                LayerCost c;
                c.cycles = 1 + static_cast<std::int64_t>(rng.uniform_int(30));
                std::int64_t quarters = rng.uniform_int(8) == 0
                                            ? 0
                                            : 1 + static_cast<std::int64_t>(
                                                      rng.uniform_int(60));
                c.bandwidth = make_rat(quarters, 4);
                c.energy_pj = 1.0 + static_cast<double>(rng.uniform_int(1000));
                table.at(mi, l, s) = c;
            }

    RequestTrace trace;
    int total_layers = 0;
    std::int64_t arrival = static_cast<std::int64_t>(rng.uniform_int(6));
    for (int j = 0; j < 4; ++j) {
        int model = static_cast<int>(rng.uniform_int(n_models));
        if (total_layers + table.num_layers(model) > 12) break;
        total_layers += table.num_layers(model);
        std::int64_t q = 3 + static_cast<std::int64_t>(rng.uniform_int(120));
        trace.jobs.emplace_back(j, model, arrival, q, QosLevel::Medium);
        arrival += static_cast<std::int64_t>(rng.uniform_int(13));
    }

    std::int64_t t_s = 3 + static_cast<std::int64_t>(rng.uniform_int(38));
    int kind = static_cast<int>(rng.uniform_int(12));
    std::uint64_t policy_seed = rng.next_u64();
    return RandomInstance{std::move(mas),  std::move(models), std::move(table),
                          std::move(trace), t_s,              kind,
                          policy_seed};
}

// Fresh policy per call: stateful policies (random decisions, the GA) must
// not share RNG position between the engine run and the oracle run.
inline std::unique_ptr<SchedulerPolicy> make_instance_policy(const RandomInstance& inst) {
    if (inst.policy_kind <= 5) return make_random_scheduler(inst.policy_seed);
    if (inst.policy_kind <= 7) return make_fcfs_scheduler();
    if (inst.policy_kind <= 9) return make_prema_scheduler();
    if (inst.policy_kind == 10) return make_herald_scheduler();
    GaParams ga;
    ga.population = 4;
    ga.generations = 3;
    ga.elite = 1;
    ga.tournament_k = 2;
    ga.seed = inst.policy_seed;
    return make_magma_scheduler(ga);
}

// Runs the engine and the cycle-stepping oracle on one instance and compares
// every observable: event log, job fates, energy, busy cycles, makespan,
// stall total. Returns an empty string on agreement.
inline std::string compare_engine_oracle(const RandomInstance& inst) {
    auto engine_policy = make_instance_policy(inst);
    auto oracle_policy = make_instance_policy(inst);

    RunResult engine =
        run_trace(inst.mas, inst.table, inst.trace, *engine_policy, inst.t_s);
    OracleSim oracle(inst.mas, inst.table, inst.trace);
    OracleResult ref = oracle.run(*oracle_policy, inst.t_s);

    std::ostringstream why;
    if (!ref.work_conserving) why << "oracle saw an idle SA with a ready entry; ";
    if (!ref.progress_bounded) why << "oracle saw progress overshoot a full cycle; ";

    std::string engine_log = events_to_jsonl(engine.events);
    std::string oracle_log = events_to_jsonl(ref.events);
    if (engine_log != oracle_log) {
        why << "event logs differ\n--- engine ---\n"
            << engine_log << "--- oracle ---\n"
            << oracle_log;
        return why.str();
    }

    std::vector<JobOutcome> ref_outcomes;
    for (const OracleJob& j : ref.jobs)
        if (j.resolved)
            ref_outcomes.push_back(
                {j.job.job_id, j.job.model_id, j.fate, j.resolve_time});
    if (engine.job_outcomes.size() != ref_outcomes.size()) {
        why << "job outcome counts differ: " << engine.job_outcomes.size() << " vs "
            << ref_outcomes.size() << "; ";
    } else {
        for (std::size_t i = 0; i < ref_outcomes.size(); ++i) {
            const JobOutcome& a = engine.job_outcomes[i];
            const JobOutcome& b = ref_outcomes[i];
            if (a.job_id != b.job_id || a.fate != b.fate || a.time != b.time)
                why << "job " << b.job_id << " outcome differs (fate "
                    << static_cast<int>(a.fate) << "/" << static_cast<int>(b.fate)
                    << ", time " << a.time << "/" << b.time << "); ";
        }
    }

    for (int m = 0; m < inst.mas.num_sas(); ++m) {
        double expect = ref.makespan > 0 ? static_cast<double>(ref.busy_cycles[m]) /
                                               static_cast<double>(ref.makespan)
                                         : 0.0;
        if (engine.metrics.sa_busy_fraction[m] != expect)
            why << "busy fraction differs on sa " << m << "; ";
    }

    if (engine.metrics.total_energy_pj != ref.energy_pj)
        why << "energy differs: " << engine.metrics.total_energy_pj << " vs "
            << ref.energy_pj << "; ";
    if (engine.metrics.makespan != ref.makespan)
        why << "makespan differs: " << engine.metrics.makespan << " vs "
            << ref.makespan << "; ";
    if (engine.metrics.stall_cycles != rat_to_double(ref.stall_cycles))
        why << "stall cycles differ; ";

    return why.str();
}

}  // namespace relmas::testsup

#endif

#ifndef RELMAS_TESTS_SUPPORT_ORACLE_HPP
#define RELMAS_TESTS_SUPPORT_ORACLE_HPP

// Brute-force reference simulator: walks wall time one cycle at a time and
// applies the shared-bandwidth rate rule cycle-wise. Slow and obvious on
// purpose; the event-driven engine must reproduce it exactly.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/cost.hpp"
#include "relmas/rational.hpp"
#include "relmas/rng.hpp"
#include "relmas/sched.hpp"
#include "relmas/sim.hpp"
#include "relmas/workload.hpp"

namespace relmas::testsup {

struct OracleSj {
    Phase phase = Phase::Pending;
    int sa = -1;
    std::int64_t start = -1;
    std::int64_t finish = -1;  // drop time for dropped layers
    std::int64_t cost = 0;
    Rat progress;
    Rat bandwidth;
};

struct OracleJob {
    Job job;
    std::int64_t deadline = 0;
    std::vector<OracleSj> layers;
    bool resolved = false;
    JobFate fate = JobFate::Hit;
    std::int64_t resolve_time = 0;
};

struct OracleResult {
    std::vector<Event> events;
    std::vector<OracleJob> jobs;
    double energy_pj = 0.0;
    std::vector<std::int64_t> busy_cycles;
    std::int64_t makespan = 0;
    Rat stall_cycles;
    bool work_conserving = true;
    bool progress_bounded = true;  // every finish lands with cost <= p < cost+1
};

class OracleSim {
  public:
    OracleSim(const MasConfig& mas, const CostTable& table, const RequestTrace& trace,
              std::int64_t bandwidth_override = 0)
        : mas_(mas), table_(table), trace_(trace.jobs) {
        bandwidth_ = bandwidth_override > 0 ? bandwidth_override
                                            : mas.dram_bandwidth_bytes_per_cycle;
    }

    OracleResult run(SchedulerPolicy& policy, std::int64_t t_s) {
        OracleResult out;
        out.busy_cycles.assign(mas_.num_sas(), 0);
        out.stall_cycles = Rat(0);

        std::vector<OracleJob> jobs;
        std::size_t next_arrival = 0;
        std::vector<Slot> running(mas_.num_sas());
        std::vector<std::vector<Slot>> queues(mas_.num_sas());

        std::int64_t t = 0;
        std::int64_t boundary = 0;
        const std::int64_t cap = 5'000'000;

        while (true) {
            step_completions(jobs, running, t, &out);
            step_drops(jobs, t, &out);
            while (next_arrival < trace_.size() &&
                   trace_[next_arrival].arrival_cycle <= t) {
                jobs.push_back(admit(trace_[next_arrival]));
                ++next_arrival;
            }

            if (t == boundary) {
                if (t > 0) out.events.push_back({t, EventKind::Period, -1, -1, -1});
                bool drained = next_arrival == trace_.size();
                for (const Slot& s : running)
                    if (s.job >= 0) drained = false;
                for (const OracleJob& j : jobs)
                    if (!j.resolved) drained = false;
                if (t > 0 && drained) break;

                SystemSnapshot snap;
                std::vector<Slot> refs;
                build_snapshot(jobs, running, t, snap, refs);
                ScheduleContext ctx{
                    snap, table_, mas_, bandwidth_, t_s,
                    [&](const std::vector<Decision>& ds) {
                        return project(jobs, running, refs, ds, t);
                    }};
                install(queues, refs, jobs, policy.schedule(ctx));
                boundary += t_s;
            }

            dispatch(jobs, running, queues, t, &out);
            check_conservation(jobs, running, queues, out);
            advance_one_cycle(jobs, running, out.stall_cycles);
            ++t;
            if (t > cap) throw SimError("oracle exceeded cycle cap");
        }

        out.jobs = std::move(jobs);
        return out;
    }

  private:
    struct Slot {
        int job = -1;
        int layer = -1;
    };

    OracleJob admit(const Job& job) const {
        OracleJob oj;
        oj.job = job;
        oj.deadline = absolute_deadline(job);
        oj.layers.resize(table_.num_layers(job.model_id));
        return oj;
    }

    static bool ready(const std::vector<OracleJob>& jobs, Slot s) {
        const OracleJob& j = jobs[s.job];
        if (j.layers[s.layer].phase != Phase::Pending) return false;
        return s.layer == 0 || j.layers[s.layer - 1].phase == Phase::Finished;
    }

    void step_completions(std::vector<OracleJob>& jobs, std::vector<Slot>& running,
                          std::int64_t t, OracleResult* out) const {
        for (int m = 0; m < mas_.num_sas(); ++m) {
            if (running[m].job < 0) continue;
            OracleJob& j = jobs[running[m].job];
            OracleSj& sj = j.layers[running[m].layer];
            Rat cost(static_cast<long>(sj.cost));
            if (sj.progress < cost) continue;
            if (sj.progress >= cost + 1) out->progress_bounded = false;
            sj.phase = Phase::Finished;
            sj.finish = t;
            out->events.push_back(
                {t, EventKind::Finish, j.job.job_id, running[m].layer, m});
            out->energy_pj += table_.at(j.job.model_id, running[m].layer, m).energy_pj;
            out->busy_cycles[m] += t - sj.start;
            out->makespan = std::max(out->makespan, t);
            bool all_finished = true;
            for (const OracleSj& other : j.layers)
                if (other.phase != Phase::Finished) all_finished = false;
            if (all_finished && !j.resolved) {
                j.resolved = true;
                j.resolve_time = t;
                j.fate = sj.finish <= j.deadline ? JobFate::Hit : JobFate::Late;
            }
            running[m] = Slot{};
        }
    }

    void step_drops(std::vector<OracleJob>& jobs, std::int64_t t,
                    OracleResult* out) const {
        std::vector<Slot> victims;
        for (int ji = 0; ji < static_cast<int>(jobs.size()); ++ji) {
            OracleJob& j = jobs[ji];
            if (j.resolved || j.deadline + 1 > t) continue;
            for (int l = 0; l < static_cast<int>(j.layers.size()); ++l)
                if (j.layers[l].phase == Phase::Pending) victims.push_back({ji, l});
        }
        std::sort(victims.begin(), victims.end(), [&](Slot a, Slot b) {
            const OracleJob& ja = jobs[a.job];
            const OracleJob& jb = jobs[b.job];
            if (ja.deadline != jb.deadline) return ja.deadline < jb.deadline;
            if (ja.job.job_id != jb.job.job_id) return ja.job.job_id < jb.job.job_id;
            return a.layer < b.layer;
        });
        for (Slot v : victims) {
            OracleJob& j = jobs[v.job];
            j.layers[v.layer].phase = Phase::Dropped;
            j.layers[v.layer].finish = t;
            out->events.push_back({t, EventKind::Drop, j.job.job_id, v.layer, -1});
            out->makespan = std::max(out->makespan, t);
            if (!j.resolved) {
                j.resolved = true;
                j.fate = JobFate::Dropped;
                j.resolve_time = t;
            }
        }
    }

    void build_snapshot(const std::vector<OracleJob>& jobs,
                        const std::vector<Slot>& running, std::int64_t t,
                        SystemSnapshot& snap, std::vector<Slot>& refs) const {
        snap.now = t;
        snap.busy_until.assign(mas_.num_sas(), 0);
        for (int m = 0; m < mas_.num_sas(); ++m) {
            if (running[m].job < 0) continue;
            const OracleSj& sj = jobs[running[m].job].layers[running[m].layer];
            snap.busy_until[m] =
                rat_ceil(Rat(static_cast<long>(sj.cost)) - sj.progress);
        }
        snap.ready_queue.clear();
        refs.clear();
        for (int ji = 0; ji < static_cast<int>(jobs.size()); ++ji) {
            const OracleJob& j = jobs[ji];
            if (j.resolved) continue;
            for (int l = 0; l < static_cast<int>(j.layers.size()); ++l) {
                if (j.layers[l].phase != Phase::Pending) continue;
                ReadyEntry e;
                e.job_id = j.job.job_id;
                e.model_id = j.job.model_id;
                e.layer_id = l;
                e.arrival = j.job.arrival_cycle;
                e.qos = j.job.qos_latency_cycles;
                e.deadline = j.deadline;
                if (l == 0 || j.layers[l - 1].phase == Phase::Finished)
                    e.pred = PredState::None;
                else if (j.layers[l - 1].phase == Phase::Running) {
                    e.pred = PredState::Running;
                    e.pred_sa = j.layers[l - 1].sa;
                } else
                    e.pred = PredState::Queued;
                snap.ready_queue.push_back(e);
                refs.push_back({ji, l});
            }
        }
        std::vector<std::size_t> order(refs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const ReadyEntry& ea = snap.ready_queue[a];
            const ReadyEntry& eb = snap.ready_queue[b];
            if (ea.deadline != eb.deadline) return ea.deadline < eb.deadline;
            if (ea.job_id != eb.job_id) return ea.job_id < eb.job_id;
            return ea.layer_id < eb.layer_id;
        });
        std::vector<ReadyEntry> rq;
        std::vector<Slot> rr;
        for (std::size_t i : order) {
            rq.push_back(snap.ready_queue[i]);
            rr.push_back(refs[i]);
        }
        snap.ready_queue = std::move(rq);
        refs = std::move(rr);
    }

    struct Ranked {
        double priority = 0.0;
        Slot slot;
        std::int64_t deadline = 0;
        std::int64_t job_id = 0;
    };

    void install(std::vector<std::vector<Slot>>& queues, const std::vector<Slot>& refs,
                 const std::vector<OracleJob>& jobs,
                 const std::vector<Decision>& decisions) const {
        if (decisions.size() != refs.size())
            throw SimError("oracle: decision list does not match ready queue");
        std::vector<std::vector<Ranked>> ranked(mas_.num_sas());
        for (std::size_t i = 0; i < decisions.size(); ++i) {
            const Decision& d = decisions[i];
            if (d.sa_choice < 0 || d.sa_choice >= mas_.num_sas())
                throw SimError("oracle: decision names unknown sa");
            const OracleJob& j = jobs[refs[i].job];
            ranked[d.sa_choice].push_back(
                {d.priority, refs[i], j.deadline, j.job.job_id});
        }
        for (int m = 0; m < mas_.num_sas(); ++m) {
            std::sort(ranked[m].begin(), ranked[m].end(),
                      [](const Ranked& a, const Ranked& b) {
                          if (a.priority != b.priority) return a.priority > b.priority;
                          if (a.deadline != b.deadline) return a.deadline < b.deadline;
                          if (a.job_id != b.job_id) return a.job_id < b.job_id;
                          return a.slot.layer < b.slot.layer;
                      });
            queues[m].clear();
            for (const Ranked& r : ranked[m]) queues[m].push_back(r.slot);
        }
    }

    void dispatch(std::vector<OracleJob>& jobs, std::vector<Slot>& running,
                  const std::vector<std::vector<Slot>>& queues, std::int64_t t,
                  OracleResult* out) const {
        for (int m = 0; m < mas_.num_sas(); ++m) {
            if (running[m].job >= 0) continue;
            for (Slot s : queues[m]) {
                if (!ready(jobs, s)) continue;
                OracleJob& j = jobs[s.job];
                OracleSj& sj = j.layers[s.layer];
                const LayerCost& cost = table_.at(j.job.model_id, s.layer, m);
                sj.phase = Phase::Running;
                sj.sa = m;
                sj.start = t;
                sj.progress = Rat(0);
                sj.cost = cost.cycles;
                sj.bandwidth = cost.bandwidth;
                running[m] = s;
                if (out)
                    out->events.push_back(
                        {t, EventKind::Start, j.job.job_id, s.layer, m});
                break;
            }
        }
    }

    void check_conservation(const std::vector<OracleJob>& jobs,
                            const std::vector<Slot>& running,
                            const std::vector<std::vector<Slot>>& queues,
                            OracleResult& out) const {
        for (int m = 0; m < mas_.num_sas(); ++m) {
            if (running[m].job >= 0) continue;
            for (Slot s : queues[m])
                if (ready(jobs, s)) out.work_conserving = false;
        }
    }

    Rat rate(const std::vector<OracleJob>& jobs,
             const std::vector<Slot>& running) const {
        Rat demand(0);
        for (const Slot& s : running) {
            if (s.job < 0) continue;
            demand += jobs[s.job].layers[s.layer].bandwidth;
        }
        if (demand <= 0) return Rat(1);
        Rat r = Rat(static_cast<long>(bandwidth_)) / demand;
        return r > 1 ? Rat(1) : r;
    }

    void advance_one_cycle(std::vector<OracleJob>& jobs, std::vector<Slot>& running,
                           Rat& stall) const {
        Rat r = rate(jobs, running);
        int n = 0;
        for (const Slot& s : running) {
            if (s.job < 0) continue;
            jobs[s.job].layers[s.layer].progress += r;
            ++n;
        }
        if (n > 0 && r < 1) stall += Rat(static_cast<long>(n)) * (Rat(1) - r);
    }

    // Cycle-stepped twin of the engine's projection: copies the state, runs
    // the candidate decisions to drain with no further arrivals.
    std::vector<Projection> project(const std::vector<OracleJob>& jobs_in,
                                    const std::vector<Slot>& running_in,
                                    const std::vector<Slot>& refs,
                                    const std::vector<Decision>& decisions,
                                    std::int64_t t0) const {
        std::vector<OracleJob> jobs = jobs_in;
        std::vector<Slot> running = running_in;
        std::vector<std::vector<Slot>> queues(mas_.num_sas());
        install(queues, refs, jobs, decisions);
        std::int64_t t = t0;
        const std::int64_t cap = t + 5'000'000;
        OracleResult scratch;
        scratch.busy_cycles.assign(mas_.num_sas(), 0);
        scratch.stall_cycles = Rat(0);
        while (true) {
            step_completions(jobs, running, t, &scratch);
            step_drops(jobs, t, &scratch);
            bool live = false;
            for (const Slot& s : running)
                if (s.job >= 0) live = true;
            for (const OracleJob& j : jobs)
                if (!j.resolved) live = true;
            if (!live) break;
            dispatch(jobs, running, queues, t, nullptr);
            advance_one_cycle(jobs, running, scratch.stall_cycles);
            ++t;
            if (t > cap) throw SimError("oracle projection exceeded cycle cap");
        }
        std::vector<Projection> result(refs.size());
        for (std::size_t i = 0; i < refs.size(); ++i) {
            const OracleSj& sj = jobs[refs[i].job].layers[refs[i].layer];
            result[i].finished = sj.phase == Phase::Finished;
            result[i].time = sj.finish;
        }
        return result;
    }

    const MasConfig& mas_;
    const CostTable& table_;
    std::vector<Job> trace_;
    std::int64_t bandwidth_ = 0;
};

}  // namespace relmas::testsup

#endif

#ifndef RELMAS_SIM_HPP
#define RELMAS_SIM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/cost.hpp"
#include "relmas/rational.hpp"
#include "relmas/sched.hpp"
#include "relmas/workload.hpp"

namespace relmas {

// Uniform slowdown shared by every overlapping sub-job: r = min(1, B / sum b).
// An empty or bandwidth-free running set runs at full rate.
Rat contention_rate(const std::vector<Rat>& bandwidths, std::int64_t bandwidth);

enum class EventKind { Start, Finish, Drop, Period };

const char* event_kind_name(EventKind k);

// t is always an integer cycle: rates are constant within one wall cycle, so
// every state change lands on a cycle boundary.
struct Event {
    std::int64_t t = 0;
    EventKind kind = EventKind::Period;
    std::int64_t job = -1;
    int layer = -1;
    int sa = -1;
};

std::string events_to_jsonl(const std::vector<Event>& events);

struct PeriodOutcome {
    std::vector<ReadyEntry> residual_rq;  // unstarted, sorted by deadline
    struct FinishedSj {
        std::int64_t job_id = 0;
        int layer_id = 0;
        std::int64_t finish = 0;
        int sa = 0;
    };
    struct DroppedSj {
        std::int64_t job_id = 0;
        int layer_id = 0;
        std::int64_t drop_time = 0;
    };
    std::vector<FinishedSj> finished;
    std::vector<DroppedSj> dropped;
    Rat stall_cycles_total;
};

enum class JobFate { Hit, Late, Dropped };

struct JobOutcome {
    std::int64_t job_id = 0;
    int model_id = 0;
    JobFate fate = JobFate::Hit;
    std::int64_t time = 0;  // finish of last layer, or drop time
};

struct Metrics {
    std::int64_t jobs_total = 0;
    std::int64_t jobs_hit = 0;
    std::int64_t jobs_late = 0;
    std::int64_t jobs_dropped = 0;
    bool vacuous = false;  // no jobs: rate reported as 1.0 by convention
    double sla_satisfaction_rate = 1.0;
    double total_energy_pj = 0.0;
    std::vector<double> sa_busy_fraction;
    std::int64_t makespan = 0;
    double stall_cycles = 0.0;

    std::int64_t jobs_missed() const { return jobs_late + jobs_dropped; }
};

double sla_satisfaction_rate(const Metrics& m);

// Deterministic discrete-event engine. One engine per trace; strictly
// sequential. Separate engines are independent and safe to run in parallel.
class Engine {
  public:
    Engine(const MasConfig& mas, const CostTable& table, const RequestTrace& trace,
           std::int64_t bandwidth_override = 0);

    std::int64_t now() const { return state_.now; }
    std::int64_t bandwidth() const { return bandwidth_; }

    // Admits every job with arrival <= now into the pending pool, then builds
    // the deadline-sorted snapshot of all pending sub-jobs. The snapshot is
    // cached: decisions passed to advance_period/project align with it.
    const SystemSnapshot& snapshot();

    // Runs the engine for t_s cycles under the given decisions. Dispatch uses
    // only the snapshot entries; jobs arriving mid-period wait in the pool.
    PeriodOutcome advance_period(const std::vector<Decision>& decisions,
                                 std::int64_t t_s);

    // Pure projection: same semantics with no further arrivals and no time
    // limit. One Projection per snapshot entry, positionally aligned.
    std::vector<Projection> project(const std::vector<Decision>& decisions) const;

    // True when no job is pending or running and the trace is exhausted.
    bool drained() const;

    const std::vector<Event>& events() const { return events_; }
    Metrics metrics() const;
    std::vector<JobOutcome> job_outcomes() const;

  private:
    struct SjState {
        Phase phase = Phase::Pending;
        int sa = -1;
        std::int64_t start = -1;
        std::int64_t finish = -1;
        std::int64_t cost = 0;
        Rat progress;
        Rat bandwidth;
    };
    struct JobState {
        Job job;
        std::int64_t deadline = 0;
        std::vector<SjState> layers;
        bool resolved = false;  // all layers finished, or job dropped
        JobFate fate = JobFate::Hit;
        std::int64_t resolve_time = 0;
    };
    struct QueueEntry {
        double priority = 0.0;
        int job_idx = 0;
        int layer = 0;
        std::int64_t deadline = 0;
        std::int64_t job_id = 0;
    };
    struct RunSlot {
        int job_idx = -1;
        int layer = -1;
    };
    struct SimState {
        std::int64_t now = 0;
        std::vector<JobState> jobs;
        std::vector<RunSlot> running;
        std::vector<std::vector<QueueEntry>> queues;  // per SA, priority-ordered
        std::size_t next_arrival = 0;
        Rat stall_cycles;
    };

    // Commit-only accumulators; projections advance a state copy without them.
    struct Sinks {
        std::vector<Event>* log = nullptr;
        double* energy = nullptr;
        std::vector<std::int64_t>* busy = nullptr;
        std::int64_t* last_activity = nullptr;
        Rat* stall = nullptr;
    };

    static void set_phase(JobState& job, int layer, Phase to);
    void admit_arrivals(SimState& s, std::int64_t up_to) const;
    // Advances to `until` (or drains when until < 0).
    PeriodOutcome advance(SimState& s, std::int64_t until, bool feed_arrivals,
                          Sinks* sinks) const;
    void build_queues(SimState& s, const std::vector<Decision>& decisions) const;
    Rat current_rate(const SimState& s) const;
    static bool pred_finished(const SimState& s, int job_idx, int layer);
    static void resolve_if_done(SimState& s, int job_idx, std::int64_t t);

    const MasConfig& mas_;
    const CostTable& table_;
    std::vector<Job> trace_;
    std::int64_t bandwidth_ = 0;

    SimState state_;
    SystemSnapshot snapshot_;
    std::vector<std::pair<int, int>> snapshot_refs_;  // (job_idx, layer)
    bool snapshot_valid_ = false;

    std::vector<Event> events_;
    double energy_pj_ = 0.0;
    std::vector<std::int64_t> busy_cycles_;
    std::int64_t last_activity_ = 0;
    Rat total_stall_;
};

struct RunResult {
    Metrics metrics;
    std::vector<Event> events;
    std::vector<JobOutcome> job_outcomes;
};

// Periodic scheduling loop: snapshot, schedule, advance by t_s; repeats until
// the trace is exhausted and the system drained.
RunResult run_trace(const MasConfig& mas, const CostTable& table,
                    const RequestTrace& trace, SchedulerPolicy& scheduler,
                    std::int64_t t_s, std::int64_t bandwidth_override = 0);

}  // namespace relmas

#endif

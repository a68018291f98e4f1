#ifndef RELMAS_SCHED_HPP
#define RELMAS_SCHED_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/cost.hpp"

namespace relmas {

// Projected fate of one ready-queue entry under a candidate decision list:
// finish time if it completes, otherwise the drop time.
struct Projection {
    bool finished = false;
    std::int64_t time = 0;
};

// Everything a policy may consult when elaborating a schedule. `project`
// evaluates a candidate decision list against the live engine state without
// committing it (used by reward computation and GA fitness).
struct ScheduleContext {
    const SystemSnapshot& snapshot;
    const CostTable& table;
    const MasConfig& mas;
    std::int64_t bandwidth = 0;
    std::int64_t t_s = 0;
    std::function<std::vector<Projection>(const std::vector<Decision>&)> project;
};

class SchedulerPolicy {
  public:
    virtual ~SchedulerPolicy() = default;
    virtual std::string name() const = 0;
    // One Decision per ready-queue entry, positionally aligned.
    virtual std::vector<Decision> schedule(const ScheduleContext& ctx) = 0;
};

// Earliest projected finish over all SAs for one entry: argmin over m of
// max(busy_until[m], ready_at) + c[m], ties to the lowest index. busy_until
// and ready_at are horizons relative to now.
int earliest_finish_sa(const ReadyEntry& entry,
                       const std::vector<std::int64_t>& busy_until,
                       std::int64_t ready_at, const CostTable& table);

struct PremaParams {
    double base_token = 1.0;
    double slope = 2.0;
    double threshold = 2.0;
};

struct GaParams {
    int population = 24;
    int generations = 60;
    int elite = 2;
    int tournament_k = 3;
    double crossover_rate = 0.9;
    double mutation_sigma = 0.2;
    double sa_resample_rate = 0.05;
    std::uint64_t seed = 1;
};

std::unique_ptr<SchedulerPolicy> make_fcfs_scheduler();
std::unique_ptr<SchedulerPolicy> make_prema_scheduler(const PremaParams& p = {});
std::unique_ptr<SchedulerPolicy> make_herald_scheduler();
std::unique_ptr<SchedulerPolicy> make_magma_scheduler(const GaParams& p = {});
// Uniform random priorities and assignments; the do-nothing control arm.
std::unique_ptr<SchedulerPolicy> make_random_scheduler(std::uint64_t seed);

}  // namespace relmas

#endif

#ifndef RELMAS_RL_OVERHEAD_HPP
#define RELMAS_RL_OVERHEAD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relmas/sched.hpp"

namespace relmas::rl {

// Multiplies per policy timestep: the four LSTM gate products plus the two
// FC layers, with F = 4+2M inputs and G = 1+M outputs.
std::int64_t policy_mac_count(int h, int num_sas);

struct OverheadConstants {
    std::vector<double> sa_mac_pj;       // energy per MAC, per SA
    double dram_pj_per_byte = 4.0;       // weight traffic cost
    double bytes_per_weight = 1.0;       // stored weight precision
    double workload_energy_pj = 0.0;     // denominator for the percentage
};

struct OverheadResult {
    double policy_pj = 0.0;
    double percent = 0.0;  // of workload energy
};

// Energy of running the policy network on one SA: every invocation evaluates
// |RQ|+1 timesteps of policy_mac_count multiplies plus one fetch of the
// weights from DRAM. rq_lengths holds the ready-queue size of each
// invocation; an empty run costs nothing.
OverheadResult overhead_energy(int h, int num_sas,
                               const std::vector<std::int64_t>& rq_lengths,
                               int designated_sa,
                               const OverheadConstants& constants);

// Wraps a policy and records the ready-queue length of every invocation.
class RecordingPolicy : public SchedulerPolicy {
  public:
    explicit RecordingPolicy(SchedulerPolicy& inner) : inner_(inner) {}

    std::string name() const override { return inner_.name(); }

    std::vector<Decision> schedule(const ScheduleContext& ctx) override {
        lengths.push_back(static_cast<std::int64_t>(ctx.snapshot.ready_queue.size()));
        return inner_.schedule(ctx);
    }

    std::vector<std::int64_t> lengths;

  private:
    SchedulerPolicy& inner_;
};

}  // namespace relmas::rl

#endif

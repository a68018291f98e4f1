#ifndef RELMAS_RL_REWARD_HPP
#define RELMAS_RL_REWARD_HPP

#include <cstdint>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/sched.hpp"

namespace relmas::rl {

struct RewardCoefficients {
    double alpha = 0.10;        // on-time bonus
    double beta = 0.11;         // miss penalty
    double gamma_slack = 0.05;  // weight of the normalized slack term
    double delta = 0.01;        // relevance of events beyond the period
    std::int64_t t_s = 0;

    void validate() const;
};

// A + gamma * slack_norm for one entry: A = alpha when the projected finish
// meets the deadline, -beta otherwise; slack_norm = ((a+q) - f)/q clamped to
// [-1,1]. A dropped entry scores -beta - gamma (slack pinned at -1).
double entry_quality(const RewardCoefficients& coeffs, const ReadyEntry& entry,
                     const Projection& proj);

// r_t = sum over the ready queue of Delta * (A + gamma * slack_norm), where
// Delta = 1 when the entry finishes inside [t, t+T_s) and delta otherwise
// (dropped entries always take the delta branch).
double compute_reward(const RewardCoefficients& coeffs, std::int64_t t,
                      const std::vector<ReadyEntry>& rq,
                      const std::vector<Projection>& projections);

}  // namespace relmas::rl

#endif

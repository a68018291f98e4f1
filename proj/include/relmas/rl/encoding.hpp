#ifndef RELMAS_RL_ENCODING_HPP
#define RELMAS_RL_ENCODING_HPP

#include <cstdint>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/cost.hpp"
#include "relmas/rl/nn.hpp"

namespace relmas::rl {

// R+1 vectors of length 4+2M: a primer row followed by one row per ready
// entry, in ready-queue order.
using StateEncoding = FeatureSeq;

// R vectors of length 1+M: [priority, u_1..u_M], all in [-1, 1].
using ActionEncoding = FeatureSeq;

// Fixed at training time and stored with the model so inference sees the
// same feature scale regardless of the runtime configuration.
struct NormConstants {
    std::int64_t t_s = 50;        // divisor for every time-valued feature
    std::int64_t bandwidth = 16;  // divisor for per-SA bandwidth demands
    double cap = 10.0;            // clip for time-valued features
};

int state_feature_count(int num_sas);   // 4 + 2M
int action_feature_count(int num_sas);  // 1 + M

// Row layout per entry: [model_id_norm, layer_id_norm, deadline_norm,
// waiting_norm, c_1..c_M, b_1..b_M]. The primer is zero except the M
// computational-time slots, which hold the per-SA busy horizons.
StateEncoding encode_state(const SystemSnapshot& snap, const CostTable& table,
                           const NormConstants& norms);

// priority = element 0; SA = argmax over u_1..u_M, ties to the lowest index.
std::vector<Decision> decode_action(const ActionEncoding& actions, int num_sas);

// Next-state encoding for the replay buffer: keeps only the entries of the
// previous ready queue that are still pending, so newly arrived jobs are
// excluded by construction.
StateEncoding encode_residual(const SystemSnapshot& snap, const CostTable& table,
                              const NormConstants& norms,
                              const std::vector<ReadyEntry>& prev_rq);

}  // namespace relmas::rl

#endif

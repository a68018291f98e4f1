#ifndef RELMAS_RL_DDPG_HPP
#define RELMAS_RL_DDPG_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "relmas/cost.hpp"
#include "relmas/rl/encoding.hpp"
#include "relmas/rl/nn.hpp"
#include "relmas/rl/reward.hpp"
#include "relmas/sched.hpp"
#include "relmas/sim.hpp"
#include "relmas/workload.hpp"

namespace relmas::rl {

struct TrainerConfig {
    int h = 32;
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    double discount_factor = 0.99;
    double soft_update_tau = 0.005;
    std::size_t buffer_capacity = 100000;
    int batch_size = 32;
    int warmup_steps = 1000;
    double noise_sigma = 0.2;
    double noise_decay = 0.999;
    int episodes = 200;
    std::uint64_t seed = 1;
    double feature_cap = 10.0;
    RewardCoefficients reward;
};

void validate_trainer_config(const TrainerConfig& cfg);

// Online nets plus their slow-moving target copies; norms travel with the
// weights so inference reproduces the training feature scale.
struct DdpgModel {
    int num_sas = 0;
    NormConstants norms;
    LstmNet actor, critic, actor_target, critic_target;
};

DdpgModel make_ddpg_model(int h, int num_sas, const NormConstants& norms, Rng& rng);

// Q for the pair: critic ingests [state_row, action_row] per timestep (primer
// padded with a zero action) and the scalar at the final timestep is Q.
double critic_q(const LstmNet& critic, const StateEncoding& s,
                const ActionEncoding& a);

struct PolicyOutput {
    std::vector<Decision> decisions;
    ActionEncoding actions;  // raw, for the replay buffer
};

// encode -> actor -> (optional) Gaussian noise clipped to [-1, 1] -> decode.
// Pass sigma = 0 or rng = nullptr for the deterministic policy.
PolicyOutput relmas_schedule(const LstmNet& actor, const SystemSnapshot& snap,
                             const CostTable& table, const NormConstants& norms,
                             double noise_sigma = 0.0, Rng* rng = nullptr);

// Deterministic inference wrapper around a trained actor.
std::unique_ptr<SchedulerPolicy> make_relmas_scheduler(LstmNet actor,
                                                       NormConstants norms);

struct TrainEnv {
    MasConfig mas;
    CostTable table;
    std::int64_t t_s = 50;
    // Training trace for a given episode index; seeded by the caller.
    std::function<RequestTrace(std::int64_t)> trace_for_episode;
    // Fixed held-out traces scored with the noise-free policy after each
    // episode.
    std::vector<RequestTrace> eval_traces;
};

struct CurvePoint {
    std::int64_t episode = 0;  // 1-based, cumulative across resumes
    double mean_reward = 0.0;
    double eval_sla = 0.0;
};

// Everything that persists across a save/resume cycle. The replay buffer and
// optimizer moments restart empty on resume (warmup applies again).
struct TrainState {
    DdpgModel model;
    std::int64_t episode = 0;  // episodes completed so far
    std::int64_t steps = 0;    // environment steps taken
    double sigma = 0.0;        // current exploration noise
};

TrainState make_initial_train_state(const TrainerConfig& cfg, int num_sas,
                                    const NormConstants& norms);

// Runs episodes state.episode .. cfg.episodes-1, mutating state in place.
// Returns one curve point per episode run; on_episode (if set) fires after
// each episode with the updated state.
std::vector<CurvePoint> ddpg_train(
    const TrainerConfig& cfg, const TrainEnv& env, TrainState& state,
    const std::function<void(const TrainState&, const CurvePoint&)>& on_episode = {});

}  // namespace relmas::rl

#endif

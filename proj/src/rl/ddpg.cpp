#include "relmas/rl/ddpg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "relmas/par.hpp"
#include "relmas/rl/replay.hpp"

namespace relmas::rl {

namespace {

// Per-timestep critic input: [state_row, action_row], primer padded with a
// zero action so the two sequences align.
FeatureSeq concat_state_action(const StateEncoding& s, const ActionEncoding& a,
                               int g) {
    if (s.empty()) throw SimError("critic input needs at least the primer row");
    if (a.size() + 1 != s.size())
        throw SimError("critic needs one action per non-primer state row");
    FeatureSeq seq;
    seq.reserve(s.size());
    for (std::size_t t = 0; t < s.size(); ++t) {
        std::vector<double> row = s[t];
        if (t == 0) {
            row.insert(row.end(), static_cast<std::size_t>(g), 0.0);
        } else {
            if (static_cast<int>(a[t - 1].size()) != g)
                throw SimError("action row width does not match action size");
            row.insert(row.end(), a[t - 1].begin(), a[t - 1].end());
        }
        seq.push_back(std::move(row));
    }
    return seq;
}

ActionEncoding actor_actions(const LstmNet& actor, const StateEncoding& s) {
    LstmCache cache = lstm_forward(actor, s);
    return ActionEncoding(cache.y.begin() + 1, cache.y.end());
}

class RelmasPolicy : public SchedulerPolicy {
  public:
    RelmasPolicy(LstmNet actor, NormConstants norms)
        : actor_(std::move(actor)), norms_(norms) {}

    std::string name() const override { return "relmas"; }

    std::vector<Decision> schedule(const ScheduleContext& ctx) override {
        return relmas_schedule(actor_, ctx.snapshot, ctx.table, norms_).decisions;
    }

  private:
    LstmNet actor_;
    NormConstants norms_;
};

double eval_sla(const DdpgModel& model, const TrainEnv& env) {
    if (env.eval_traces.empty()) return 0.0;
    std::vector<double> rates(env.eval_traces.size(), 0.0);
    par::for_each_index(env.eval_traces.size(), par::default_policy(),
                        [&](std::size_t i) {
                            RelmasPolicy policy(model.actor, model.norms);
                            RunResult r = run_trace(env.mas, env.table,
                                                    env.eval_traces[i], policy,
                                                    env.t_s);
                            rates[i] = r.metrics.sla_satisfaction_rate;
                        });
    double sum = 0.0;
    for (double r : rates) sum += r;
    return sum / static_cast<double>(rates.size());
}

// One gradient step on a sampled batch. Sequences keep their natural lengths:
// each sample is a full forward/backward pass and the per-sample parameter
// gradients are averaged afterwards in index order, so the parallel and
// serial paths produce identical sums.
struct Updater {
    const TrainerConfig& cfg;
    DdpgModel& model;
    Adam adam_actor, adam_critic;
    int g = 0;

    Updater(const TrainerConfig& c, DdpgModel& m) : cfg(c), model(m) {
        adam_actor.lr = c.actor_lr;
        adam_critic.lr = c.critic_lr;
        g = action_feature_count(m.num_sas);
    }

    void step(const std::vector<const Experience*>& batch) {
        std::size_t n = batch.size();

        std::vector<double> targets(n, 0.0);
        std::vector<std::vector<double>> critic_slots(n);
        std::vector<double> sq_err(n, 0.0);
        par::for_each_index(n, par::default_policy(), [&](std::size_t i) {
            const Experience& e = *batch[i];
            double y = e.r;
            if (!e.terminal) {
                ActionEncoding next_a = actor_actions(model.actor_target, e.s_next);
                y += cfg.discount_factor *
                     critic_q(model.critic_target, e.s_next, next_a);
            }
            targets[i] = y;
            LstmCache cache =
                lstm_forward(model.critic, concat_state_action(e.s, e.a, g));
            double q = cache.y.back()[0];
            double diff = q - y;
            sq_err[i] = diff * diff;
            FeatureSeq dy(cache.y.size(), std::vector<double>(1, 0.0));
            dy.back()[0] = 2.0 * diff / static_cast<double>(n);
            critic_slots[i] = lstm_backward(model.critic, cache, dy).param;
        });

        double loss = 0.0;
        for (double s : sq_err) loss += s;
        loss /= static_cast<double>(n);
        if (!std::isfinite(loss))
            throw SimError("ddpg training diverged: critic loss is not finite");

        std::vector<double> critic_grad(model.critic.w.size(), 0.0);
        for (const auto& slot : critic_slots)
            for (std::size_t k = 0; k < critic_grad.size(); ++k)
                critic_grad[k] += slot[k];
        adam_critic.step(model.critic.w, critic_grad);

        // Actor ascends Q(s, mu(s)). Samples with an empty ready queue carry
        // no actor-dependent input, so they are skipped; the average runs
        // over the contributing samples.
        std::vector<std::size_t> contributing;
        for (std::size_t i = 0; i < n; ++i)
            if (batch[i]->s.size() > 1) contributing.push_back(i);
        if (!contributing.empty()) {
            std::size_t nc = contributing.size();
            std::vector<std::vector<double>> actor_slots(nc);
            std::vector<double> qs(nc, 0.0);
            par::for_each_index(nc, par::default_policy(), [&](std::size_t ci) {
                const Experience& e = *batch[contributing[ci]];
                LstmCache acache = lstm_forward(model.actor, e.s);
                ActionEncoding mu(acache.y.begin() + 1, acache.y.end());
                LstmCache ccache =
                    lstm_forward(model.critic, concat_state_action(e.s, mu, g));
                qs[ci] = ccache.y.back()[0];
                FeatureSeq dq(ccache.y.size(), std::vector<double>(1, 0.0));
                dq.back()[0] = -1.0 / static_cast<double>(nc);
                LstmGrads cg = lstm_backward(model.critic, ccache, dq);
                int f = model.actor.in;
                FeatureSeq ady(acache.y.size(),
                               std::vector<double>(static_cast<std::size_t>(g), 0.0));
                for (std::size_t t = 1; t < cg.input.size(); ++t)
                    for (int k = 0; k < g; ++k)
                        ady[t][static_cast<std::size_t>(k)] =
                            cg.input[t][static_cast<std::size_t>(f + k)];
                actor_slots[ci] = lstm_backward(model.actor, acache, ady).param;
            });
            double qsum = 0.0;
            for (double q : qs) qsum += q;
            if (!std::isfinite(qsum))
                throw SimError("ddpg training diverged: actor objective is not finite");
            std::vector<double> actor_grad(model.actor.w.size(), 0.0);
            for (const auto& slot : actor_slots)
                for (std::size_t k = 0; k < actor_grad.size(); ++k)
                    actor_grad[k] += slot[k];
            adam_actor.step(model.actor.w, actor_grad);
        }

        soft_update(model.actor_target, model.actor, cfg.soft_update_tau);
        soft_update(model.critic_target, model.critic, cfg.soft_update_tau);
    }
};

}  // namespace

void validate_trainer_config(const TrainerConfig& cfg) {
    if (cfg.h < 2 || cfg.h % 2 != 0) throw ConfigError("hidden size must be even and >= 2");
    if (cfg.actor_lr <= 0.0 || cfg.critic_lr <= 0.0)
        throw ConfigError("learning rates must be positive");
    if (cfg.discount_factor < 0.0 || cfg.discount_factor >= 1.0)
        throw ConfigError("discount factor must be in [0, 1)");
    if (cfg.soft_update_tau <= 0.0 || cfg.soft_update_tau > 1.0)
        throw ConfigError("soft update tau must be in (0, 1]");
    if (cfg.buffer_capacity < 1) throw ConfigError("buffer capacity must be >= 1");
    if (cfg.batch_size < 1) throw ConfigError("batch size must be >= 1");
    if (cfg.warmup_steps < 0) throw ConfigError("warmup steps must be >= 0");
    if (cfg.noise_sigma < 0.0) throw ConfigError("noise sigma must be >= 0");
    if (cfg.noise_decay <= 0.0 || cfg.noise_decay > 1.0)
        throw ConfigError("noise decay must be in (0, 1]");
    if (cfg.episodes < 0) throw ConfigError("episodes must be >= 0");
    if (cfg.feature_cap <= 0.0) throw ConfigError("feature cap must be positive");
}

DdpgModel make_ddpg_model(int h, int num_sas, const NormConstants& norms, Rng& rng) {
    if (num_sas < 1) throw ConfigError("model needs at least one SA");
    int f = state_feature_count(num_sas);
    int g = action_feature_count(num_sas);
    DdpgModel m;
    m.num_sas = num_sas;
    m.norms = norms;
    m.actor = make_lstm_net(f, h, g, true);
    m.critic = make_lstm_net(f + g, h, 1, false);
    init_lstm_net(m.actor, rng);
    init_lstm_net(m.critic, rng);
    m.actor_target = m.actor;
    m.critic_target = m.critic;
    return m;
}

double critic_q(const LstmNet& critic, const StateEncoding& s,
                const ActionEncoding& a) {
    int g = critic.in - (static_cast<int>(s.empty() ? 0 : s[0].size()));
    LstmCache cache = lstm_forward(critic, concat_state_action(s, a, g));
    return cache.y.back()[0];
}

PolicyOutput relmas_schedule(const LstmNet& actor, const SystemSnapshot& snap,
                             const CostTable& table, const NormConstants& norms,
                             double noise_sigma, Rng* rng) {
    StateEncoding s = encode_state(snap, table, norms);
    PolicyOutput out;
    if (s.size() == 1) return out;
    out.actions = actor_actions(actor, s);
    if (noise_sigma > 0.0 && rng != nullptr)
        for (auto& row : out.actions)
            for (double& v : row)
                v = std::clamp(v + noise_sigma * rng->gaussian(), -1.0, 1.0);
    out.decisions = decode_action(out.actions, table.num_sas());
    return out;
}

std::unique_ptr<SchedulerPolicy> make_relmas_scheduler(LstmNet actor,
                                                       NormConstants norms) {
    return std::make_unique<RelmasPolicy>(std::move(actor), norms);
}

TrainState make_initial_train_state(const TrainerConfig& cfg, int num_sas,
                                    const NormConstants& norms) {
    validate_trainer_config(cfg);
    Rng rng(mix_seed(cfg.seed, 0x1D1));
    TrainState st;
    st.model = make_ddpg_model(cfg.h, num_sas, norms, rng);
    st.sigma = cfg.noise_sigma;
    return st;
}

std::vector<CurvePoint> ddpg_train(
    const TrainerConfig& cfg, const TrainEnv& env, TrainState& state,
    const std::function<void(const TrainState&, const CurvePoint&)>& on_episode) {
    validate_trainer_config(cfg);
    if (!env.trace_for_episode) throw ConfigError("training needs a trace source");
    if (env.t_s < 1) throw ConfigError("scheduling period must be >= 1");
    if (state.model.num_sas != env.table.num_sas())
        throw ConfigError("model SA count does not match the environment");

    RewardCoefficients coeffs = cfg.reward;
    coeffs.t_s = env.t_s;
    coeffs.validate();

    ReplayBuffer buffer(cfg.buffer_capacity, mix_seed(cfg.seed, 0xB0FF));
    Updater updater(cfg, state.model);

    std::vector<CurvePoint> curves;
    for (std::int64_t ep = state.episode; ep < cfg.episodes; ++ep) {
        RequestTrace trace = env.trace_for_episode(ep);
        Engine eng(env.mas, env.table, trace);
        Rng noise_rng(mix_seed(cfg.seed, 0x4015E + static_cast<std::uint64_t>(ep)));

        double reward_sum = 0.0;
        std::int64_t period_count = 0;
        while (true) {
            const SystemSnapshot& snap = eng.snapshot();
            std::int64_t now = snap.now;
            std::vector<ReadyEntry> rq = snap.ready_queue;
            StateEncoding s = encode_state(snap, env.table, state.model.norms);
            PolicyOutput po = relmas_schedule(state.model.actor, snap, env.table,
                                              state.model.norms, state.sigma,
                                              &noise_rng);
            double r = compute_reward(coeffs, now, rq, eng.project(po.decisions));
            eng.advance_period(po.decisions, env.t_s);
            bool terminal = eng.drained();
            StateEncoding s_next =
                encode_residual(eng.snapshot(), env.table, state.model.norms, rq);
            buffer.push({std::move(s), std::move(po.actions), r, std::move(s_next),
                         terminal});

            reward_sum += r;
            ++period_count;
            ++state.steps;
            state.sigma *= cfg.noise_decay;
            if (buffer.size() >= static_cast<std::size_t>(cfg.warmup_steps))
                updater.step(buffer.sample(static_cast<std::size_t>(cfg.batch_size)));
            if (terminal) break;
            if (period_count > 2000000) throw SimError("episode failed to drain");
        }

        CurvePoint pt;
        pt.episode = ep + 1;
        pt.mean_reward = reward_sum / static_cast<double>(period_count);
        pt.eval_sla = eval_sla(state.model, env);
        state.episode = ep + 1;
        curves.push_back(pt);
        if (on_episode) on_episode(state, pt);
    }
    return curves;
}

}  // namespace relmas::rl

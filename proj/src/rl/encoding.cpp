#include "relmas/rl/encoding.hpp"

#include <algorithm>

#include "relmas/rational.hpp"

namespace relmas::rl {

namespace {

double capped(double v, double cap) { return std::clamp(v, -cap, cap); }

}  // namespace

int state_feature_count(int num_sas) { return 4 + 2 * num_sas; }

int action_feature_count(int num_sas) { return 1 + num_sas; }

StateEncoding encode_state(const SystemSnapshot& snap, const CostTable& table,
                           const NormConstants& norms) {
    if (norms.t_s < 1 || norms.bandwidth < 1 || norms.cap <= 0.0)
        throw ConfigError("normalization constants must be positive");
    int m = table.num_sas();
    if (static_cast<int>(snap.busy_until.size()) != m)
        throw SimError("snapshot SA count does not match cost table");

    double ts = static_cast<double>(norms.t_s);
    double bw = static_cast<double>(norms.bandwidth);
    std::size_t f = static_cast<std::size_t>(state_feature_count(m));

    StateEncoding s;
    s.reserve(snap.ready_queue.size() + 1);
    std::vector<double> primer(f, 0.0);
    for (int k = 0; k < m; ++k)
        primer[4 + static_cast<std::size_t>(k)] =
            capped(static_cast<double>(snap.busy_until[k]) / ts, norms.cap);
    s.push_back(std::move(primer));

    for (const ReadyEntry& e : snap.ready_queue) {
        std::vector<double> row(f, 0.0);
        row[0] = static_cast<double>(e.model_id) /
                 static_cast<double>(table.num_models());
        row[1] = static_cast<double>(e.layer_id) /
                 static_cast<double>(table.num_layers(e.model_id));
        row[2] = capped(static_cast<double>(e.deadline - snap.now) / ts, norms.cap);
        row[3] = capped(static_cast<double>(snap.now - e.arrival) / ts, norms.cap);
        for (int k = 0; k < m; ++k) {
            const LayerCost& c = table.at(e.model_id, e.layer_id, k);
            row[4 + static_cast<std::size_t>(k)] =
                capped(static_cast<double>(c.cycles) / ts, norms.cap);
            row[4 + static_cast<std::size_t>(m + k)] = rat_to_double(c.bandwidth) / bw;
        }
        s.push_back(std::move(row));
    }
    return s;
}

std::vector<Decision> decode_action(const ActionEncoding& actions, int num_sas) {
    if (num_sas < 1) throw SimError("decode needs at least one SA");
    std::vector<Decision> decisions;
    decisions.reserve(actions.size());
    for (const auto& a : actions) {
        if (static_cast<int>(a.size()) != action_feature_count(num_sas))
            throw SimError("action vector length does not match SA count");
        Decision d;
        d.priority = a[0];
        d.sa_choice = 0;
        for (int k = 1; k < num_sas; ++k)
            if (a[1 + static_cast<std::size_t>(k)] > a[1 + static_cast<std::size_t>(d.sa_choice)])
                d.sa_choice = k;
        decisions.push_back(d);
    }
    return decisions;
}

StateEncoding encode_residual(const SystemSnapshot& snap, const CostTable& table,
                              const NormConstants& norms,
                              const std::vector<ReadyEntry>& prev_rq) {
    SystemSnapshot filtered;
    filtered.now = snap.now;
    filtered.busy_until = snap.busy_until;
    for (const ReadyEntry& e : snap.ready_queue) {
        bool seen = false;
        for (const ReadyEntry& p : prev_rq)
            if (p.job_id == e.job_id && p.layer_id == e.layer_id) {
                seen = true;
                break;
            }
        if (seen) filtered.ready_queue.push_back(e);
    }
    return encode_state(filtered, table, norms);
}

}  // namespace relmas::rl

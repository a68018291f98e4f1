#include "relmas/rl/reward.hpp"

#include <algorithm>

namespace relmas::rl {

void RewardCoefficients::validate() const {
    if (alpha < 0 || beta < 0 || gamma_slack < 0)
        throw ConfigError("reward coefficients alpha, beta, gamma must be >= 0");
    if (delta < 0 || delta > 1) throw ConfigError("reward delta must be in [0,1]");
    if (t_s <= 0) throw ConfigError("reward coefficients need t_s > 0");
}

double entry_quality(const RewardCoefficients& coeffs, const ReadyEntry& entry,
                     const Projection& proj) {
    if (!proj.finished) return -coeffs.beta - coeffs.gamma_slack;
    double a = proj.time <= entry.deadline ? coeffs.alpha : -coeffs.beta;
    double slack = static_cast<double>(entry.deadline - proj.time) /
                   static_cast<double>(entry.qos);
    slack = std::clamp(slack, -1.0, 1.0);
    return a + coeffs.gamma_slack * slack;
}

double compute_reward(const RewardCoefficients& coeffs, std::int64_t t,
                      const std::vector<ReadyEntry>& rq,
                      const std::vector<Projection>& projections) {
    coeffs.validate();
    if (rq.size() != projections.size())
        throw SimError("reward needs one projection per ready entry");
    double total = 0.0;
    for (std::size_t i = 0; i < rq.size(); ++i) {
        const Projection& p = projections[i];
        bool inside = p.finished && p.time < t + coeffs.t_s;
        double weight = inside ? 1.0 : coeffs.delta;
        total += weight * entry_quality(coeffs, rq[i], p);
    }
    return total;
}

}  // namespace relmas::rl

#include "relmas/rl/overhead.hpp"

#include "relmas/core.hpp"
#include "relmas/rl/encoding.hpp"

namespace relmas::rl {

std::int64_t policy_mac_count(int h, int num_sas) {
    if (h < 2 || h % 2 != 0) throw ConfigError("hidden size must be even and >= 2");
    if (num_sas < 1) throw ConfigError("need at least one SA");
    std::int64_t hh = h;
    std::int64_t f = state_feature_count(num_sas);
    std::int64_t g = action_feature_count(num_sas);
    return 4 * hh * (f + hh) + hh * (hh / 2) + (hh / 2) * g;
}

OverheadResult overhead_energy(int h, int num_sas,
                               const std::vector<std::int64_t>& rq_lengths,
                               int designated_sa,
                               const OverheadConstants& constants) {
    OverheadResult out;
    if (rq_lengths.empty()) return out;
    if (designated_sa < 0 ||
        designated_sa >= static_cast<int>(constants.sa_mac_pj.size()))
        throw ConfigError("designated SA has no per-MAC energy");
    if (constants.workload_energy_pj <= 0.0)
        throw ConfigError("workload energy must be positive");

    double macs_per_step = static_cast<double>(policy_mac_count(h, num_sas));
    double e_mac = constants.sa_mac_pj[static_cast<std::size_t>(designated_sa)];
    double weight_fetch_pj =
        macs_per_step * constants.bytes_per_weight * constants.dram_pj_per_byte;
    for (std::int64_t rq : rq_lengths) {
        if (rq < 0) throw ConfigError("ready-queue length cannot be negative");
        double steps = static_cast<double>(rq + 1);
        out.policy_pj += macs_per_step * steps * e_mac + weight_fetch_pj;
    }
    out.percent = 100.0 * out.policy_pj / constants.workload_energy_pj;
    return out;
}

}  // namespace relmas::rl

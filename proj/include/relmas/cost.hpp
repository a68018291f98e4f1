#ifndef RELMAS_COST_HPP
#define RELMAS_COST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/rational.hpp"

namespace relmas {

// Per (layer, SA) execution figures. Bandwidth is kept as the exact rational
// bytes/cycles so the contention engine never sees float rounding.
struct LayerCost {
    std::int64_t cycles = 1;
    Rat bandwidth;  // bytes per cycle
    double energy_pj = 0.0;
};

// Roofline knobs. Utilizations are decimal strings so they stay exact.
struct CostModelParams {
    std::string util_row_stationary = "0.75";
    std::string util_weight_stationary = "0.85";
    double e_mac_row_stationary_pj = 0.5;
    double e_mac_weight_stationary_pj = 0.4;
    double e_byte_pj = 4.0;
};

LayerCost analytic_cost(const LayerDesc& layer, const SaSpec& sa, const MasConfig& cfg,
                        const CostModelParams& params = {});

// Immutable (model, layer, sa) -> cost lookup, complete by construction.
class CostTable {
  public:
    CostTable() = default;  // empty: no models, no SAs
    CostTable(const std::vector<DnnModelDesc>& models, const MasConfig& cfg);

    int num_models() const { return static_cast<int>(layer_counts_.size()); }
    int num_sas() const { return num_sas_; }
    int num_layers(int model_id) const;
    int max_layers() const;
    const std::string& model_name(int model_id) const;
    int model_id_by_name(const std::string& name) const;  // -1 if unknown

    const LayerCost& at(int model_id, int layer_id, int sa_id) const;
    LayerCost& at(int model_id, int layer_id, int sa_id);

  private:
    int num_sas_ = 0;
    std::vector<int> layer_counts_;
    std::vector<std::string> model_names_;
    std::vector<std::size_t> model_offsets_;
    std::vector<LayerCost> costs_;
};

CostTable build_analytic_table(const std::vector<DnnModelDesc>& models,
                               const MasConfig& cfg, const CostModelParams& params = {});

// CSV ingestion ("registration phase" output). Header must be
// model,layer,sa,cycles,bandwidth_bytes_per_cycle,energy_pj. With allow_partial
// the analytic model fills missing pairs; otherwise any gap is an error naming
// the missing tuple.
CostTable load_cost_table(const std::string& path, const MasConfig& cfg,
                          const std::vector<DnnModelDesc>& models,
                          bool allow_partial = false,
                          const CostModelParams& params = {});
CostTable load_cost_table_text(const std::string& text, const MasConfig& cfg,
                               const std::vector<DnnModelDesc>& models,
                               bool allow_partial = false,
                               const CostModelParams& params = {});

std::string cost_table_to_csv(const CostTable& table);
void write_cost_table_csv(const CostTable& table, const std::string& path);

// Lower bound on a job's makespan: each layer on its fastest SA, no contention.
std::int64_t min_job_latency(int model_id, const CostTable& table);

}  // namespace relmas

#endif

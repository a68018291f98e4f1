#include "relmas/cost.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace relmas {

LayerCost analytic_cost(const LayerDesc& layer, const SaSpec& sa, const MasConfig& cfg,
                        const CostModelParams& params) {
    layer.validate();
    sa.validate();
    Rat util = rat_from_decimal(sa.dataflow == Dataflow::RowStationary
                                    ? params.util_row_stationary
                                    : params.util_weight_stationary);
    if (util <= 0 || util > 1) throw ConfigError("utilization must be in (0,1]");

    Rat effective_macs_per_cycle = Rat(sa.peak_macs_per_cycle()) * util;
    std::int64_t compute_cycles = rat_ceil(Rat(layer.macs) / effective_macs_per_cycle);

    std::int64_t bytes = layer.total_bytes();
    std::int64_t bw = cfg.dram_bandwidth_bytes_per_cycle;
    std::int64_t mem_cycles = (bytes + bw - 1) / bw;

    LayerCost cost;
    cost.cycles = std::max<std::int64_t>({compute_cycles, mem_cycles, 1});
    cost.bandwidth = make_rat(bytes, cost.cycles);

    double e_mac = sa.dataflow == Dataflow::RowStationary
                       ? params.e_mac_row_stationary_pj
                       : params.e_mac_weight_stationary_pj;
    double nop_bits =
        static_cast<double>(layer.input_bytes + layer.output_bytes) * 8.0;
    cost.energy_pj = static_cast<double>(layer.macs) * e_mac +
                     static_cast<double>(bytes) * params.e_byte_pj +
                     nop_bits * cfg.nop_energy_pj_per_bit;
    return cost;
}

CostTable::CostTable(const std::vector<DnnModelDesc>& models, const MasConfig& cfg) {
    cfg.validate();
    if (models.empty()) throw ConfigError("cost table needs at least one model");
    num_sas_ = cfg.num_sas();
    std::size_t offset = 0;
    for (const auto& model : models) {
        model.validate();
        if (model.model_id != static_cast<int>(layer_counts_.size()))
            throw ConfigError("model ids must be 0..N-1 in order");
        layer_counts_.push_back(model.num_layers());
        model_names_.push_back(model.name);
        model_offsets_.push_back(offset);
        offset += static_cast<std::size_t>(model.num_layers()) * num_sas_;
    }
    costs_.resize(offset);
}

int CostTable::num_layers(int model_id) const {
    if (model_id < 0 || model_id >= num_models())
        throw ConfigError("unknown model id " + std::to_string(model_id));
    return layer_counts_[model_id];
}

int CostTable::max_layers() const {
    return *std::max_element(layer_counts_.begin(), layer_counts_.end());
}

const std::string& CostTable::model_name(int model_id) const {
    num_layers(model_id);
    return model_names_[model_id];
}

int CostTable::model_id_by_name(const std::string& name) const {
    for (int i = 0; i < num_models(); ++i)
        if (model_names_[i] == name) return i;
    return -1;
}

const LayerCost& CostTable::at(int model_id, int layer_id, int sa_id) const {
    if (layer_id < 0 || layer_id >= num_layers(model_id))
        throw ConfigError("layer out of range");
    if (sa_id < 0 || sa_id >= num_sas_) throw ConfigError("sa out of range");
    return costs_[model_offsets_[model_id] +
                  static_cast<std::size_t>(layer_id) * num_sas_ + sa_id];
}

LayerCost& CostTable::at(int model_id, int layer_id, int sa_id) {
    return const_cast<LayerCost&>(
        static_cast<const CostTable&>(*this).at(model_id, layer_id, sa_id));
}

CostTable build_analytic_table(const std::vector<DnnModelDesc>& models,
                               const MasConfig& cfg, const CostModelParams& params) {
    CostTable table(models, cfg);
    for (const auto& model : models)
        for (const auto& layer : model.layers)
            for (const auto& sa : cfg.sas)
                table.at(model.model_id, layer.layer_id, sa.id) =
                    analytic_cost(layer, sa, cfg, params);
    return table;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const char* kCostHeader = "model,layer,sa,cycles,bandwidth_bytes_per_cycle,energy_pj";

}  // namespace

CostTable load_cost_table_text(const std::string& text, const MasConfig& cfg,
                               const std::vector<DnnModelDesc>& models,
                               bool allow_partial, const CostModelParams& params) {
    CostTable table(models, cfg);
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    for (const auto& model : models) {
        offsets.push_back(total);
        total += static_cast<std::size_t>(model.num_layers()) * cfg.num_sas();
    }
    std::vector<char> filled(total, 0);
    auto fill_index = [&](int model, int layer, int sa) {
        return offsets[model] + static_cast<std::size_t>(layer) * cfg.num_sas() + sa;
    };

    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(ss, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (!header_seen) {
            if (t != kCostHeader)
                throw ConfigError("cost csv line 1: expected header '" +
                                  std::string(kCostHeader) + "'");
            header_seen = true;
            continue;
        }
        auto fields = split_csv_line(t);
        if (fields.size() != 6)
            throw ConfigError("cost csv line " + std::to_string(line_no) +
                              ": expected 6 fields, got " +
                              std::to_string(fields.size()));
        try {
            std::string model_name = trim(fields[0]);
            int model_id = table.model_id_by_name(model_name);
            if (model_id < 0) throw ConfigError("unknown model '" + model_name + "'");
            int layer_id = std::stoi(trim(fields[1]));
            int sa_id = std::stoi(trim(fields[2]));
            std::int64_t cycles = std::stoll(trim(fields[3]));
            if (cycles < 1) throw ConfigError("cycles must be >= 1");
            if (layer_id < 0 || layer_id >= table.num_layers(model_id))
                throw ConfigError("layer out of range");
            if (sa_id < 0 || sa_id >= cfg.num_sas()) throw ConfigError("sa out of range");

            Rat decimal_bw = rat_from_decimal(trim(fields[4]));
            if (decimal_bw < 0) throw ConfigError("bandwidth must be >= 0");
            // Snap to a denominator of `cycles` so bandwidth x cycles is an
            // exact byte count.
            mpz_class bytes = rat_floor_mpz(decimal_bw * cycles + make_rat(1, 2));
            LayerCost cost;
            cost.cycles = cycles;
            cost.bandwidth = Rat(bytes, mpz_class(cycles));
            cost.bandwidth.canonicalize();
            cost.energy_pj = std::stod(trim(fields[5]));
            if (cost.energy_pj < 0) throw ConfigError("energy must be >= 0");
            table.at(model_id, layer_id, sa_id) = cost;
            filled[fill_index(model_id, layer_id, sa_id)] = 1;
        } catch (const std::exception& e) {
            throw ConfigError("cost csv line " + std::to_string(line_no) + ": " +
                              e.what());
        }
    }

    for (const auto& model : models) {
        for (const auto& layer : model.layers) {
            for (const auto& sa : cfg.sas) {
                if (filled[fill_index(model.model_id, layer.layer_id, sa.id)]) continue;
                if (!allow_partial)
                    throw ConfigError("cost table incomplete: missing (" + model.name +
                                      ", layer " + std::to_string(layer.layer_id) +
                                      ", sa " + std::to_string(sa.id) + ")");
                table.at(model.model_id, layer.layer_id, sa.id) =
                    analytic_cost(layer, sa, cfg, params);
            }
        }
    }
    return table;
}

CostTable load_cost_table(const std::string& path, const MasConfig& cfg,
                          const std::vector<DnnModelDesc>& models, bool allow_partial,
                          const CostModelParams& params) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open cost table: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_cost_table_text(ss.str(), cfg, models, allow_partial, params);
}

std::string cost_table_to_csv(const CostTable& table) {
    std::ostringstream out;
    out << kCostHeader << "\n";
    for (int m = 0; m < table.num_models(); ++m) {
        for (int l = 0; l < table.num_layers(m); ++l) {
            for (int s = 0; s < table.num_sas(); ++s) {
                const LayerCost& c = table.at(m, l, s);
                out << table.model_name(m) << ',' << l << ',' << s << ',' << c.cycles
                    << ',' << rat_to_decimal(c.bandwidth, 6) << ',' << c.energy_pj
                    << "\n";
            }
        }
    }
    return out.str();
}

void write_cost_table_csv(const CostTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write cost table: " + path);
    out << cost_table_to_csv(table);
}

std::int64_t min_job_latency(int model_id, const CostTable& table) {
    std::int64_t total = 0;
    for (int l = 0; l < table.num_layers(model_id); ++l) {
        std::int64_t best = table.at(model_id, l, 0).cycles;
        for (int s = 1; s < table.num_sas(); ++s)
            best = std::min(best, table.at(model_id, l, s).cycles);
        total += best;
    }
    return total;
}

}  // namespace relmas

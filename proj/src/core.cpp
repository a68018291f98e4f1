#include "relmas/core.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace relmas {

const char* dataflow_name(Dataflow df) {
    switch (df) {
        case Dataflow::RowStationary: return "row_stationary";
        case Dataflow::WeightStationary: return "weight_stationary";
    }
    return "?";
}

Dataflow dataflow_from_name(const std::string& name) {
    if (name == "row_stationary" || name == "rs") return Dataflow::RowStationary;
    if (name == "weight_stationary" || name == "ws") return Dataflow::WeightStationary;
    throw ConfigError("unknown dataflow: " + name);
}

void SaSpec::validate() const {
    if (num_pes <= 0) throw ConfigError("sa " + name + ": num_pes must be > 0");
    if (macs_per_pe <= 0) throw ConfigError("sa " + name + ": macs_per_pe must be > 0");
    if (global_buffer_bytes < 0) throw ConfigError("sa " + name + ": negative global buffer");
    if (pe_buffer_bytes < 0) throw ConfigError("sa " + name + ": negative pe buffer");
    if (frequency_hz <= 0) throw ConfigError("sa " + name + ": frequency must be > 0");
}

void MasConfig::validate() const {
    if (sas.empty()) throw ConfigError("mas has no sub-accelerators");
    if (dram_bandwidth_bytes_per_cycle <= 0)
        throw ConfigError("dram bandwidth must be > 0");
    if (nop_energy_pj_per_bit < 0) throw ConfigError("negative nop energy");
    for (int i = 0; i < num_sas(); ++i) {
        if (sas[i].id != i) throw ConfigError("sa ids must be 0..M-1 in order");
        sas[i].validate();
        if (sas[i].frequency_hz != sas[0].frequency_hz)
            throw ConfigError("all sas must share one clock frequency");
    }
}

void LayerDesc::validate() const {
    if (macs <= 0) throw ConfigError("layer macs must be > 0");
    if (input_bytes < 0 || weight_bytes < 0 || output_bytes < 0)
        throw ConfigError("layer byte counts must be >= 0");
}

void DnnModelDesc::validate() const {
    if (layers.empty()) throw ConfigError("model " + name + " has no layers");
    for (int i = 0; i < num_layers(); ++i) {
        if (layers[i].layer_id != i)
            throw ConfigError("model " + name + ": layer ids must be 0..L-1 in order");
        layers[i].validate();
    }
}

const char* qos_level_name(QosLevel level) {
    switch (level) {
        case QosLevel::Low: return "low";
        case QosLevel::Medium: return "medium";
        case QosLevel::High: return "high";
    }
    return "?";
}

QosLevel qos_level_from_name(const std::string& name) {
    if (name == "low") return QosLevel::Low;
    if (name == "medium") return QosLevel::Medium;
    if (name == "high") return QosLevel::High;
    throw ConfigError("unknown qos level: " + name);
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Pending: return "pending";
        case Phase::Running: return "running";
        case Phase::Finished: return "finished";
        case Phase::Dropped: return "dropped";
    }
    return "?";
}

bool phase_transition_ok(Phase from, Phase to) {
    switch (from) {
        case Phase::Pending:
            return to == Phase::Running || to == Phase::Dropped;
        case Phase::Running:
            return to == Phase::Finished;
        case Phase::Finished:
        case Phase::Dropped:
            return false;
    }
    return false;
}

std::vector<std::string> validate_snapshot(const SystemSnapshot& snap) {
    std::vector<std::string> problems;
    if (snap.now < 0) problems.push_back("now is negative");
    for (std::size_t m = 0; m < snap.busy_until.size(); ++m) {
        if (snap.busy_until[m] < 0)
            problems.push_back("busy_until[" + std::to_string(m) + "] is negative");
    }
    std::unordered_set<std::int64_t> seen;
    for (std::size_t i = 0; i < snap.ready_queue.size(); ++i) {
        const ReadyEntry& e = snap.ready_queue[i];
        std::int64_t key = e.job_id * 100000 + e.layer_id;
        if (!seen.insert(key).second)
            problems.push_back("duplicate entry job " + std::to_string(e.job_id) +
                               " layer " + std::to_string(e.layer_id));
        if (e.deadline < snap.now)
            problems.push_back("expired entry job " + std::to_string(e.job_id) +
                               " layer " + std::to_string(e.layer_id));
        if (e.pred == PredState::Running &&
            (e.pred_sa < 0 ||
             static_cast<std::size_t>(e.pred_sa) >= snap.busy_until.size()))
            problems.push_back("entry job " + std::to_string(e.job_id) + " layer " +
                               std::to_string(e.layer_id) + " has bad pred_sa");
        if (i > 0 && deadline_order(e, snap.ready_queue[i - 1]))
            problems.push_back("queue order broken at index " + std::to_string(i));
    }
    return problems;
}

namespace {

SaSpec make_sa(int id, std::string name, Dataflow df, std::int64_t pes,
               std::int64_t macs_per_pe, std::int64_t gb_bytes, std::int64_t pe_bytes) {
    SaSpec sa;
    sa.id = id;
    sa.name = std::move(name);
    sa.dataflow = df;
    sa.num_pes = pes;
    sa.macs_per_pe = macs_per_pe;
    sa.global_buffer_bytes = gb_bytes;
    sa.pe_buffer_bytes = pe_bytes;
    sa.frequency_hz = 1e9;
    return sa;
}

}  // namespace

MasConfig default_mas_config() {
    MasConfig cfg;
    cfg.dram_bandwidth_bytes_per_cycle = 16;
    cfg.nop_energy_pj_per_bit = 1.3;
    const std::int64_t kib = 1024;
    cfg.sas = {
        make_sa(0, "eyeriss_small_0", Dataflow::RowStationary, 256, 1, 64 * kib, 220),
        make_sa(1, "eyeriss_small_1", Dataflow::RowStationary, 256, 1, 64 * kib, 220),
        make_sa(2, "eyeriss_large_0", Dataflow::RowStationary, 512, 1, 64 * kib, 220),
        make_sa(3, "simba_small_0", Dataflow::WeightStationary, 16, 16, 32 * kib, 24 * kib),
        make_sa(4, "simba_small_1", Dataflow::WeightStationary, 16, 16, 32 * kib, 24 * kib),
        make_sa(5, "simba_large_0", Dataflow::WeightStationary, 32, 16, 64 * kib, 24 * kib),
    };
    cfg.validate();
    return cfg;
}

namespace {

DnnModelDesc model_from_json(const nlohmann::json& j, int model_id) {
    DnnModelDesc model;
    model.model_id = model_id;
    model.name = j.value("name", "model" + std::to_string(model_id));
    if (!j.contains("layers") || !j["layers"].is_array())
        throw ConfigError("model " + model.name + ": missing layers array");
    int lid = 0;
    for (const auto& lj : j["layers"]) {
        LayerDesc layer;
        layer.layer_id = lid++;
        layer.macs = lj.value("macs", std::int64_t{1});
        layer.input_bytes = lj.value("input_bytes", std::int64_t{0});
        layer.weight_bytes = lj.value("weight_bytes", std::int64_t{0});
        layer.output_bytes = lj.value("output_bytes", std::int64_t{0});
        model.layers.push_back(layer);
    }
    model.validate();
    return model;
}

}  // namespace

std::vector<DnnModelDesc> load_models_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("model json parse error: ") + e.what());
    }
    std::vector<DnnModelDesc> models;
    if (doc.is_array()) {
        for (const auto& mj : doc)
            models.push_back(model_from_json(mj, static_cast<int>(models.size())));
    } else if (doc.is_object()) {
        models.push_back(model_from_json(doc, 0));
    } else {
        throw ConfigError("model json must be an object or array");
    }
    if (models.empty()) throw ConfigError("model json contains no models");
    return models;
}

std::vector<DnnModelDesc> load_models_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_models_json_text(ss.str());
}

}  // namespace relmas

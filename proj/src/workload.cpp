#include "relmas/workload.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "relmas/rng.hpp"

namespace relmas {

const char* workload_set_name(WorkloadSetName w) {
    switch (w) {
        case WorkloadSetName::Light: return "light";
        case WorkloadSetName::Heavy: return "heavy";
        case WorkloadSetName::Mixed: return "mixed";
    }
    return "?";
}

WorkloadSetName workload_set_from_name(const std::string& name) {
    if (name == "light") return WorkloadSetName::Light;
    if (name == "heavy") return WorkloadSetName::Heavy;
    if (name == "mixed") return WorkloadSetName::Mixed;
    throw ConfigError("unknown workload set: " + name);
}

namespace {

LayerDesc layer(int id, std::int64_t macs, std::int64_t in_b, std::int64_t w_b,
                std::int64_t out_b) {
    LayerDesc l;
    l.layer_id = id;
    l.macs = macs;
    l.input_bytes = in_b;
    l.weight_bytes = w_b;
    l.output_bytes = out_b;
    return l;
}

DnnModelDesc model(int id, const std::string& name,
                   std::vector<std::array<std::int64_t, 4>> rows) {
    DnnModelDesc m;
    m.model_id = id;
    m.name = name;
    int lid = 0;
    for (const auto& r : rows) m.layers.push_back(layer(lid++, r[0], r[1], r[2], r[3]));
    m.validate();
    return m;
}

}  // namespace

std::vector<DnnModelDesc> builtin_models() {
    // Small nets lean memory-bound, large nets compute-bound, with a few
    // bandwidth-hungry layers sprinkled in to provoke contention.
    std::vector<DnnModelDesc> models;
    models.push_back(model(0, "squeezenet",
                           {{110000, 9000, 2000, 18000},
                            {240000, 18000, 5000, 12000},
                            {90000, 12000, 3000, 12000},
                            {300000, 12000, 9000, 8000},
                            {140000, 8000, 5000, 8000},
                            {260000, 8000, 12000, 5000},
                            {80000, 5000, 4000, 3000}}));
    models.push_back(model(1, "yolo-lite",
                           {{180000, 16000, 2000, 24000},
                            {350000, 24000, 5000, 16000},
                            {150000, 16000, 4000, 16000},
                            {420000, 16000, 8000, 9000},
                            {120000, 9000, 6000, 6000}}));
    models.push_back(model(2, "keyword-spotting",
                           {{60000, 4000, 3000, 6000},
                            {150000, 6000, 8000, 4000},
                            {90000, 4000, 10000, 2500},
                            {40000, 2500, 5000, 1200}}));
    models.push_back(model(3, "alexnet",
                           {{1100000, 40000, 3000, 70000},
                            {2200000, 70000, 20000, 45000},
                            {1500000, 45000, 30000, 30000},
                            {1300000, 30000, 40000, 30000},
                            {900000, 30000, 30000, 12000},
                            {1800000, 12000, 120000, 9000},
                            {800000, 9000, 90000, 9000},
                            {200000, 9000, 20000, 2000}}));
    models.push_back(model(4, "inceptionv3",
                           {{700000, 35000, 2000, 50000},
                            {1600000, 50000, 8000, 40000},
                            {500000, 40000, 4000, 40000},
                            {1900000, 40000, 15000, 28000},
                            {800000, 28000, 9000, 28000},
                            {2100000, 28000, 20000, 20000},
                            {600000, 20000, 10000, 20000},
                            {1700000, 20000, 25000, 14000},
                            {900000, 14000, 15000, 14000},
                            {1400000, 14000, 30000, 9000},
                            {400000, 9000, 12000, 9000},
                            {1100000, 9000, 35000, 5000}}));
    models.push_back(model(5, "resnet50",
                           {{1200000, 45000, 3000, 60000},
                            {900000, 60000, 5000, 60000},
                            {2400000, 60000, 12000, 40000},
                            {700000, 40000, 6000, 40000},
                            {2000000, 40000, 16000, 40000},
                            {800000, 40000, 8000, 28000},
                            {2600000, 28000, 25000, 28000},
                            {600000, 28000, 10000, 28000},
                            {2200000, 28000, 30000, 18000},
                            {500000, 18000, 12000, 18000},
                            {1800000, 18000, 35000, 18000},
                            {400000, 18000, 15000, 9000},
                            {1500000, 9000, 45000, 9000},
                            {300000, 9000, 18000, 4000}}));
    models.push_back(model(6, "yolo-v2",
                           {{1500000, 60000, 3000, 90000},
                            {2800000, 90000, 10000, 60000},
                            {1000000, 60000, 8000, 60000},
                            {3200000, 60000, 20000, 40000},
                            {1200000, 40000, 12000, 40000},
                            {2600000, 40000, 30000, 26000},
                            {900000, 26000, 15000, 26000},
                            {2300000, 26000, 40000, 16000},
                            {700000, 16000, 20000, 16000},
                            {1900000, 16000, 50000, 10000},
                            {500000, 10000, 25000, 6000},
                            {1200000, 6000, 60000, 4000}}));
    return models;
}

WorkloadSet make_workload_set(WorkloadSetName name,
                              const std::vector<DnnModelDesc>& models) {
    auto id_of = [&](const std::string& n) {
        for (const auto& m : models)
            if (m.name == n) return m.model_id;
        throw ConfigError("workload set references unknown model: " + n);
    };
    WorkloadSet set;
    set.name = name;
    std::vector<std::string> light = {"squeezenet", "yolo-lite", "keyword-spotting"};
    std::vector<std::string> heavy = {"alexnet", "inceptionv3", "resnet50", "yolo-v2"};
    if (name == WorkloadSetName::Light || name == WorkloadSetName::Mixed)
        for (const auto& n : light) set.model_ids.push_back(id_of(n));
    if (name == WorkloadSetName::Heavy || name == WorkloadSetName::Mixed)
        for (const auto& n : heavy) set.model_ids.push_back(id_of(n));
    return set;
}

void TraceParams::validate() const {
    if (workload.model_ids.empty()) throw ConfigError("workload set is empty");
    if (duration_cycles < 0) throw ConfigError("trace duration must be >= 0");
    if (pareto_shape <= 0) throw ConfigError("pareto shape must be > 0");
    if (pareto_scale_cycles <= 0) throw ConfigError("pareto scale must be > 0");
    if (qos_medium_factor <= 1) throw ConfigError("qos medium factor must be > 1");
    if (qos_mix.low < 0 || qos_mix.medium < 0 || qos_mix.high < 0 ||
        qos_mix.low + qos_mix.medium + qos_mix.high <= 0)
        throw ConfigError("qos mix weights must be >= 0 and not all zero");
}

double qos_factor(QosLevel level, double medium_factor) {
    switch (level) {
        case QosLevel::Low: return 1.2 * medium_factor;
        case QosLevel::Medium: return medium_factor;
        case QosLevel::High: return 0.8 * medium_factor;
    }
    return medium_factor;
}

RequestTrace generate_trace(const TraceParams& params, const CostTable& table) {
    params.validate();
    for (int id : params.workload.model_ids)
        table.num_layers(id);

    Rng rng(params.seed);
    RequestTrace trace;
    double cum = 0.0;
    std::int64_t job_id = 0;
    double w_total = params.qos_mix.low + params.qos_mix.medium + params.qos_mix.high;
    while (true) {
        cum += rng.pareto(params.pareto_shape, params.pareto_scale_cycles);
        if (cum > static_cast<double>(params.duration_cycles)) break;
        std::int64_t arrival = std::llround(cum);
        int model_id = params.workload.model_ids[static_cast<std::size_t>(
            rng.uniform_int(params.workload.model_ids.size()))];
        double u = rng.uniform01() * w_total;
        QosLevel level = QosLevel::High;
        if (u < params.qos_mix.low)
            level = QosLevel::Low;
        else if (u < params.qos_mix.low + params.qos_mix.medium)
            level = QosLevel::Medium;
        double factor = qos_factor(level, params.qos_medium_factor);
        std::int64_t q = std::max<std::int64_t>(
            1, std::llround(factor * static_cast<double>(
                                min_job_latency(model_id, table))));
        trace.jobs.emplace_back(job_id++, model_id, arrival, q, level);
    }
    return trace;
}

std::string trace_to_jsonl(const RequestTrace& trace, const CostTable& table) {
    std::ostringstream out;
    for (const auto& job : trace.jobs) {
        nlohmann::json j;
        j["job_id"] = job.job_id;
        j["model"] = table.model_name(job.model_id);
        j["arrival"] = job.arrival_cycle;
        j["qos_cycles"] = job.qos_latency_cycles;
        j["qos_level"] = qos_level_name(job.qos_level);
        out << j.dump() << "\n";
    }
    return out.str();
}

RequestTrace trace_from_jsonl(const std::string& text, const CostTable& table) {
    RequestTrace trace;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    std::int64_t prev_arrival = -1;
    while (std::getline(ss, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;  // provenance or comment line
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            int model_id = table.model_id_by_name(j.at("model").get<std::string>());
            if (model_id < 0)
                throw ConfigError("unknown model '" +
                                  j.at("model").get<std::string>() + "'");
            Job job(j.at("job_id").get<std::int64_t>(), model_id,
                    j.at("arrival").get<std::int64_t>(),
                    j.at("qos_cycles").get<std::int64_t>(),
                    qos_level_from_name(j.at("qos_level").get<std::string>()));
            if (job.arrival_cycle < prev_arrival)
                throw ConfigError("arrivals must be non-decreasing");
            prev_arrival = job.arrival_cycle;
            trace.jobs.push_back(job);
        } catch (const std::exception& e) {
            throw ConfigError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return trace;
}

void write_trace_jsonl(const RequestTrace& trace, const CostTable& table,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write trace: " + path);
    out << trace_to_jsonl(trace, table);
}

RequestTrace read_trace_jsonl(const std::string& path, const CostTable& table) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open trace: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return trace_from_jsonl(ss.str(), table);
}

}  // namespace relmas

#ifndef RELMAS_WORKLOAD_HPP
#define RELMAS_WORKLOAD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/cost.hpp"

namespace relmas {

enum class WorkloadSetName { Light, Heavy, Mixed };

const char* workload_set_name(WorkloadSetName w);
WorkloadSetName workload_set_from_name(const std::string& name);

struct WorkloadSet {
    WorkloadSetName name = WorkloadSetName::Mixed;
    std::vector<int> model_ids;
};

// Bundled synthetic seven-model set: three small nets and four large ones,
// split into Light / Heavy / Mixed (= union) sets.
std::vector<DnnModelDesc> builtin_models();
WorkloadSet make_workload_set(WorkloadSetName name,
                              const std::vector<DnnModelDesc>& models);

// Relative sampling weights for the three QoS levels.
struct QosMix {
    double low = 0.0;
    double medium = 1.0;
    double high = 0.0;
};

struct TraceParams {
    WorkloadSet workload;
    std::int64_t duration_cycles = 0;
    double pareto_shape = 1.5;
    double pareto_scale_cycles = 1.0;
    double qos_medium_factor = 3.0;
    QosMix qos_mix;
    std::uint64_t seed = 0;

    void validate() const;
};

struct RequestTrace {
    std::vector<Job> jobs;
};

// Medium keeps the base factor; Low relaxes it 1.2x, High tightens it 0.8x.
double qos_factor(QosLevel level, double medium_factor);

// Pure function of (params, table): inter-arrival gaps drawn from a Pareto
// distribution, model chosen uniformly from the set, deadline = qos factor
// times the model's uncontended best latency.
RequestTrace generate_trace(const TraceParams& params, const CostTable& table);

// One job per line: {"job_id","model","arrival","qos_cycles","qos_level"}.
// Readers skip blank lines and lines starting with '#'.
std::string trace_to_jsonl(const RequestTrace& trace, const CostTable& table);
RequestTrace trace_from_jsonl(const std::string& text, const CostTable& table);
void write_trace_jsonl(const RequestTrace& trace, const CostTable& table,
                       const std::string& path);
RequestTrace read_trace_jsonl(const std::string& path, const CostTable& table);

}  // namespace relmas

#endif

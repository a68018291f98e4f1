#ifndef RELMAS_CORE_HPP
#define RELMAS_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace relmas {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SimError : std::runtime_error {
    explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Dataflow { RowStationary, WeightStationary };

const char* dataflow_name(Dataflow df);
Dataflow dataflow_from_name(const std::string& name);

// One heterogeneous core of the multi-accelerator package.
struct SaSpec {
    int id = 0;
    std::string name;
    Dataflow dataflow = Dataflow::RowStationary;
    std::int64_t num_pes = 1;
    std::int64_t macs_per_pe = 1;
    std::int64_t global_buffer_bytes = 0;
    std::int64_t pe_buffer_bytes = 0;
    double frequency_hz = 1e9;

    std::int64_t peak_macs_per_cycle() const { return num_pes * macs_per_pe; }
    void validate() const;
};

// The whole package: SAs plus the off-chip bandwidth they share.
struct MasConfig {
    std::vector<SaSpec> sas;
    std::int64_t dram_bandwidth_bytes_per_cycle = 16;
    double nop_energy_pj_per_bit = 1.3;

    int num_sas() const { return static_cast<int>(sas.size()); }
    void validate() const;
};

// Layers are opaque cost-bearing units: just enough shape data to feed the
// analytic cost model.
struct LayerDesc {
    int layer_id = 0;
    std::int64_t macs = 1;
    std::int64_t input_bytes = 0;
    std::int64_t weight_bytes = 0;
    std::int64_t output_bytes = 0;

    std::int64_t total_bytes() const { return input_bytes + weight_bytes + output_bytes; }
    void validate() const;
};

struct DnnModelDesc {
    int model_id = 0;
    std::string name;
    std::vector<LayerDesc> layers;

    int num_layers() const { return static_cast<int>(layers.size()); }
    void validate() const;
};

enum class QosLevel { Low, Medium, High };

const char* qos_level_name(QosLevel level);
QosLevel qos_level_from_name(const std::string& name);

// One inference request: a chain of per-layer sub-jobs with a deadline of
// arrival + qos latency.
struct Job {
    std::int64_t job_id = 0;
    int model_id = 0;
    std::int64_t arrival_cycle = 0;
    std::int64_t qos_latency_cycles = 1;
    QosLevel qos_level = QosLevel::Medium;

    Job() = default;
    Job(std::int64_t id, int model, std::int64_t arrival, std::int64_t qos_cycles,
        QosLevel level)
        : job_id(id),
          model_id(model),
          arrival_cycle(arrival),
          qos_latency_cycles(qos_cycles),
          qos_level(level) {
        if (arrival_cycle < 0) throw ConfigError("job arrival must be >= 0");
        if (qos_latency_cycles <= 0) throw ConfigError("job qos latency must be > 0");
    }
};

inline std::int64_t absolute_deadline(const Job& job) {
    return job.arrival_cycle + job.qos_latency_cycles;
}

// Sub-job lifecycle. No preemption: Running never returns to Pending.
enum class Phase { Pending, Running, Finished, Dropped };

const char* phase_name(Phase p);
bool phase_transition_ok(Phase from, Phase to);

// Predecessor status of a ready-queue entry, as visible to schedulers.
enum class PredState { None, Queued, Running };

// One schedulable sub-job as presented to a scheduling policy.
struct ReadyEntry {
    std::int64_t job_id = 0;
    int model_id = 0;
    int layer_id = 0;
    std::int64_t arrival = 0;
    std::int64_t qos = 1;
    std::int64_t deadline = 1;
    PredState pred = PredState::None;
    int pred_sa = -1;  // valid when pred == Running
};

// Total, stable ordering used for the ready queue and every tie-break.
inline bool deadline_order(const ReadyEntry& a, const ReadyEntry& b) {
    if (a.deadline != b.deadline) return a.deadline < b.deadline;
    if (a.job_id != b.job_id) return a.job_id < b.job_id;
    return a.layer_id < b.layer_id;
}

// Scheduler input: current time, per-SA busy horizon (full-rate cycles until
// free), and the deadline-sorted ready queue.
struct SystemSnapshot {
    std::int64_t now = 0;
    std::vector<std::int64_t> busy_until;
    std::vector<ReadyEntry> ready_queue;
};

// Diagnostic check of the snapshot invariants; returns one message per breach.
std::vector<std::string> validate_snapshot(const SystemSnapshot& snap);

// Per sub-job scheduling output: temporal priority in [-1,1] plus SA index.
struct Decision {
    double priority = 0.0;
    int sa_choice = 0;
};

// Reference package: six SAs at 1 GHz sharing 16 B/cycle of DRAM bandwidth.
// Two small and one large Eyeriss-class row-stationary core, two small and
// one large Simba-class weight-stationary core (2048 MACs total).
MasConfig default_mas_config();

// Model descriptions from a JSON document: either one object
// {"name","layers":[{"macs","input_bytes","weight_bytes","output_bytes"}]}
// or an array of such objects. Ids are assigned in order.
std::vector<DnnModelDesc> load_models_json_text(const std::string& text);
std::vector<DnnModelDesc> load_models_json_file(const std::string& path);

}  // namespace relmas

#endif

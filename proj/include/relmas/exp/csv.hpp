#ifndef RELMAS_EXP_CSV_HPP
#define RELMAS_EXP_CSV_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace relmas::exp {

// One scenario evaluation. Field order is the CSV column order; runtime_ms is
// the simulated span converted through the package clock, so reruns of the
// same config produce identical bytes.
struct ResultRow {
    std::string scheduler;
    std::string workload;
    std::string qos_level;
    std::int64_t bandwidth = 0;
    std::uint64_t seed = 0;
    double sla_rate = 0.0;
    std::int64_t misses = 0;
    double energy_pj = 0.0;
    std::int64_t makespan = 0;
    double runtime_ms = 0.0;

    bool operator==(const ResultRow&) const = default;
};

struct CurveRow {
    std::int64_t episode = 0;
    double mean_reward = 0.0;
    double eval_sla = 0.0;

    bool operator==(const CurveRow&) const = default;
};

struct SweepRow {
    std::string scheduler;
    std::int64_t bandwidth = 0;
    double sla_rate = 0.0;
    double normalized_sla = 0.0;

    bool operator==(const SweepRow&) const = default;
};

struct OverheadRow {
    int hidden_size = 0;
    std::int64_t period = 0;
    double policy_energy_pj = 0.0;
    double workload_energy_pj = 0.0;
    double overhead_percent = 0.0;

    bool operator==(const OverheadRow&) const = default;
};

// Doubles are written shortest-round-trip, so parse(write(rows)) == rows
// exactly. Parsers reject a wrong header or malformed line with ConfigError.
std::string write_result_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_result_csv(const std::string& text);

std::string write_curve_csv(const std::vector<CurveRow>& rows);
std::vector<CurveRow> parse_curve_csv(const std::string& text);

std::string write_sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

std::string write_overhead_csv(const std::vector<OverheadRow>& rows);
std::vector<OverheadRow> parse_overhead_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace relmas::exp

#endif

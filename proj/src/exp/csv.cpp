#include "relmas/exp/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "relmas/core.hpp"

namespace relmas::exp {

namespace {

constexpr const char* kResultHeader =
    "scheduler,workload,qos_level,bandwidth,seed,sla_rate,misses,energy_pj,"
    "makespan,runtime_ms";
constexpr const char* kCurveHeader = "episode,mean_reward,eval_sla";
constexpr const char* kSweepHeader = "scheduler,bandwidth,sla_rate,normalized_sla";
constexpr const char* kOverheadHeader =
    "hidden_size,period,policy_energy_pj,workload_energy_pj,overhead_percent";

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void check_text_field(const std::string& s) {
    if (s.find_first_of(",\n\r\"") != std::string::npos)
        throw SimError("csv text field may not contain separators: '" + s + "'");
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        auto comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

template <typename T>
T parse_num(const std::string& s, int line_no) {
    T v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("csv line " + std::to_string(line_no) +
                          ": bad numeric field '" + s + "'");
    return v;
}

// Splits into non-empty lines, strips trailing \r, checks the header.
std::vector<std::string> body_lines(const std::string& text, const char* header) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        lines.push_back(line);
    }
    if (lines.empty() || lines.front() != header)
        throw ConfigError(std::string("csv header must be '") + header + "'");
    lines.erase(lines.begin());
    return lines;
}

void check_width(const std::vector<std::string>& f, std::size_t want, int line_no) {
    if (f.size() != want)
        throw ConfigError("csv line " + std::to_string(line_no) + ": expected " +
                          std::to_string(want) + " fields, got " +
                          std::to_string(f.size()));
}

}  // namespace

std::string write_result_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << kResultHeader << "\n";
    for (const auto& r : rows) {
        check_text_field(r.scheduler);
        check_text_field(r.workload);
        check_text_field(r.qos_level);
        out << r.scheduler << ',' << r.workload << ',' << r.qos_level << ','
            << r.bandwidth << ',' << r.seed << ',' << fmt(r.sla_rate) << ','
            << r.misses << ',' << fmt(r.energy_pj) << ',' << r.makespan << ','
            << fmt(r.runtime_ms) << "\n";
    }
    return out.str();
}

std::vector<ResultRow> parse_result_csv(const std::string& text) {
    std::vector<ResultRow> rows;
    int line_no = 1;
    for (const auto& line : body_lines(text, kResultHeader)) {
        ++line_no;
        auto f = split_fields(line);
        check_width(f, 10, line_no);
        ResultRow r;
        r.scheduler = f[0];
        r.workload = f[1];
        r.qos_level = f[2];
        r.bandwidth = parse_num<std::int64_t>(f[3], line_no);
        r.seed = parse_num<std::uint64_t>(f[4], line_no);
        r.sla_rate = parse_num<double>(f[5], line_no);
        r.misses = parse_num<std::int64_t>(f[6], line_no);
        r.energy_pj = parse_num<double>(f[7], line_no);
        r.makespan = parse_num<std::int64_t>(f[8], line_no);
        r.runtime_ms = parse_num<double>(f[9], line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string write_curve_csv(const std::vector<CurveRow>& rows) {
    std::ostringstream out;
    out << kCurveHeader << "\n";
    for (const auto& r : rows)
        out << r.episode << ',' << fmt(r.mean_reward) << ',' << fmt(r.eval_sla)
            << "\n";
    return out.str();
}

std::vector<CurveRow> parse_curve_csv(const std::string& text) {
    std::vector<CurveRow> rows;
    int line_no = 1;
    for (const auto& line : body_lines(text, kCurveHeader)) {
        ++line_no;
        auto f = split_fields(line);
        check_width(f, 3, line_no);
        CurveRow r;
        r.episode = parse_num<std::int64_t>(f[0], line_no);
        r.mean_reward = parse_num<double>(f[1], line_no);
        r.eval_sla = parse_num<double>(f[2], line_no);
        rows.push_back(r);
    }
    return rows;
}

std::string write_sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << kSweepHeader << "\n";
    for (const auto& r : rows) {
        check_text_field(r.scheduler);
        out << r.scheduler << ',' << r.bandwidth << ',' << fmt(r.sla_rate) << ','
            << fmt(r.normalized_sla) << "\n";
    }
    return out.str();
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
    std::vector<SweepRow> rows;
    int line_no = 1;
    for (const auto& line : body_lines(text, kSweepHeader)) {
        ++line_no;
        auto f = split_fields(line);
        check_width(f, 4, line_no);
        SweepRow r;
        r.scheduler = f[0];
        r.bandwidth = parse_num<std::int64_t>(f[1], line_no);
        r.sla_rate = parse_num<double>(f[2], line_no);
        r.normalized_sla = parse_num<double>(f[3], line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string write_overhead_csv(const std::vector<OverheadRow>& rows) {
    std::ostringstream out;
    out << kOverheadHeader << "\n";
    for (const auto& r : rows)
        out << r.hidden_size << ',' << r.period << ',' << fmt(r.policy_energy_pj)
            << ',' << fmt(r.workload_energy_pj) << ',' << fmt(r.overhead_percent)
            << "\n";
    return out.str();
}

std::vector<OverheadRow> parse_overhead_csv(const std::string& text) {
    std::vector<OverheadRow> rows;
    int line_no = 1;
    for (const auto& line : body_lines(text, kOverheadHeader)) {
        ++line_no;
        auto f = split_fields(line);
        check_width(f, 5, line_no);
        OverheadRow r;
        r.hidden_size = parse_num<int>(f[0], line_no);
        r.period = parse_num<std::int64_t>(f[1], line_no);
        r.policy_energy_pj = parse_num<double>(f[2], line_no);
        r.workload_energy_pj = parse_num<double>(f[3], line_no);
        r.overhead_percent = parse_num<double>(f[4], line_no);
        rows.push_back(r);
    }
    return rows;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw SimError("write to '" + path + "' failed");
}

}  // namespace relmas::exp

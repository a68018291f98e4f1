#include "relmas/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace relmas {

Rat contention_rate(const std::vector<Rat>& bandwidths, std::int64_t bandwidth) {
    if (bandwidth <= 0) throw SimError("shared bandwidth must be > 0");
    Rat total(0);
    for (const Rat& b : bandwidths) total += b;
    if (total <= 0) return Rat(1);
    Rat r = Rat(static_cast<long>(bandwidth)) / total;
    if (r > 1) return Rat(1);
    return r;
}

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::Start: return "start";
        case EventKind::Finish: return "finish";
        case EventKind::Drop: return "drop";
        case EventKind::Period: return "period";
    }
    return "?";
}

std::string events_to_jsonl(const std::vector<Event>& events) {
    std::ostringstream out;
    for (const Event& e : events) {
        nlohmann::json j;
        j["t"] = e.t;
        j["event"] = event_kind_name(e.kind);
        j["job"] = e.job;
        j["layer"] = e.layer;
        j["sa"] = e.sa;
        out << j.dump() << "\n";
    }
    return out.str();
}

double sla_satisfaction_rate(const Metrics& m) {
    if (m.jobs_total == 0) return 1.0;
    return static_cast<double>(m.jobs_hit) / static_cast<double>(m.jobs_total);
}

Engine::Engine(const MasConfig& mas, const CostTable& table, const RequestTrace& trace,
               std::int64_t bandwidth_override)
    : mas_(mas), table_(table), trace_(trace.jobs) {
    mas_.validate();
    bandwidth_ = bandwidth_override > 0 ? bandwidth_override
                                        : mas_.dram_bandwidth_bytes_per_cycle;
    for (std::size_t i = 1; i < trace_.size(); ++i)
        if (trace_[i].arrival_cycle < trace_[i - 1].arrival_cycle)
            throw SimError("trace arrivals must be non-decreasing");
    for (const Job& j : trace_) table_.num_layers(j.model_id);
    state_.running.resize(mas_.num_sas());
    state_.queues.resize(mas_.num_sas());
    state_.stall_cycles = Rat(0);
    busy_cycles_.assign(mas_.num_sas(), 0);
    total_stall_ = Rat(0);
}

void Engine::set_phase(JobState& job, int layer, Phase to) {
    Phase from = job.layers[layer].phase;
    if (!phase_transition_ok(from, to))
        throw SimError(std::string("illegal phase transition ") + phase_name(from) +
                       " -> " + phase_name(to));
    job.layers[layer].phase = to;
}

void Engine::admit_arrivals(SimState& s, std::int64_t up_to) const {
    while (s.next_arrival < trace_.size() &&
           trace_[s.next_arrival].arrival_cycle <= up_to) {
        const Job& job = trace_[s.next_arrival];
        JobState js;
        js.job = job;
        js.deadline = absolute_deadline(job);
        js.layers.resize(table_.num_layers(job.model_id));
        s.jobs.push_back(std::move(js));
        ++s.next_arrival;
    }
}

const SystemSnapshot& Engine::snapshot() {
    admit_arrivals(state_, state_.now);
    snapshot_.now = state_.now;
    snapshot_.busy_until.assign(mas_.num_sas(), 0);
    for (int m = 0; m < mas_.num_sas(); ++m) {
        const RunSlot& slot = state_.running[m];
        if (slot.job_idx < 0) continue;
        const SjState& sj = state_.jobs[slot.job_idx].layers[slot.layer];
        snapshot_.busy_until[m] = rat_ceil(Rat(static_cast<long>(sj.cost)) - sj.progress);
    }
    snapshot_.ready_queue.clear();
    snapshot_refs_.clear();
    for (int ji = 0; ji < static_cast<int>(state_.jobs.size()); ++ji) {
        const JobState& js = state_.jobs[ji];
        if (js.resolved) continue;
        for (int l = 0; l < static_cast<int>(js.layers.size()); ++l) {
            if (js.layers[l].phase != Phase::Pending) continue;
            ReadyEntry e;
            e.job_id = js.job.job_id;
            e.model_id = js.job.model_id;
            e.layer_id = l;
            e.arrival = js.job.arrival_cycle;
            e.qos = js.job.qos_latency_cycles;
            e.deadline = js.deadline;
            if (l == 0 || js.layers[l - 1].phase == Phase::Finished) {
                e.pred = PredState::None;
            } else if (js.layers[l - 1].phase == Phase::Running) {
                e.pred = PredState::Running;
                e.pred_sa = js.layers[l - 1].sa;
            } else {
                e.pred = PredState::Queued;
            }
            snapshot_.ready_queue.push_back(e);
            snapshot_refs_.emplace_back(ji, l);
        }
    }
    std::vector<std::size_t> order(snapshot_.ready_queue.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return deadline_order(snapshot_.ready_queue[a], snapshot_.ready_queue[b]);
    });
    SystemSnapshot sorted;
    sorted.now = snapshot_.now;
    sorted.busy_until = snapshot_.busy_until;
    std::vector<std::pair<int, int>> sorted_refs;
    for (std::size_t i : order) {
        sorted.ready_queue.push_back(snapshot_.ready_queue[i]);
        sorted_refs.push_back(snapshot_refs_[i]);
    }
    snapshot_ = std::move(sorted);
    snapshot_refs_ = std::move(sorted_refs);
    snapshot_valid_ = true;
    return snapshot_;
}

void Engine::build_queues(SimState& s, const std::vector<Decision>& decisions) const {
    if (decisions.size() != snapshot_refs_.size())
        throw SimError("decision list length " + std::to_string(decisions.size()) +
                       " does not match ready queue size " +
                       std::to_string(snapshot_refs_.size()));
    for (auto& q : s.queues) q.clear();
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        const Decision& d = decisions[i];
        if (d.sa_choice < 0 || d.sa_choice >= mas_.num_sas())
            throw SimError("decision " + std::to_string(i) + " names unknown sa " +
                           std::to_string(d.sa_choice));
        if (!std::isfinite(d.priority) || d.priority < -1.0 || d.priority > 1.0)
            throw SimError("decision " + std::to_string(i) +
                           " priority outside [-1,1]");
        QueueEntry qe;
        qe.priority = d.priority;
        qe.job_idx = snapshot_refs_[i].first;
        qe.layer = snapshot_refs_[i].second;
        qe.deadline = s.jobs[qe.job_idx].deadline;
        qe.job_id = s.jobs[qe.job_idx].job.job_id;
        s.queues[d.sa_choice].push_back(qe);
    }
    for (auto& q : s.queues) {
        std::sort(q.begin(), q.end(), [](const QueueEntry& a, const QueueEntry& b) {
            if (a.priority != b.priority) return a.priority > b.priority;
            if (a.deadline != b.deadline) return a.deadline < b.deadline;
            if (a.job_id != b.job_id) return a.job_id < b.job_id;
            return a.layer < b.layer;
        });
    }
}

Rat Engine::current_rate(const SimState& s) const {
    Rat total(0);
    for (const RunSlot& slot : s.running) {
        if (slot.job_idx < 0) continue;
        total += s.jobs[slot.job_idx].layers[slot.layer].bandwidth;
    }
    if (total <= 0) return Rat(1);
    Rat r = Rat(static_cast<long>(bandwidth_)) / total;
    if (r > 1) return Rat(1);
    return r;
}

bool Engine::pred_finished(const SimState& s, int job_idx, int layer) {
    if (layer == 0) return true;
    return s.jobs[job_idx].layers[layer - 1].phase == Phase::Finished;
}

void Engine::resolve_if_done(SimState& s, int job_idx, std::int64_t t) {
    JobState& js = s.jobs[job_idx];
    if (js.resolved) return;
    for (const SjState& sj : js.layers)
        if (sj.phase != Phase::Finished) return;
    js.resolved = true;
    js.resolve_time = t;
    std::int64_t f = js.layers.back().finish;
    js.fate = f <= js.deadline ? JobFate::Hit : JobFate::Late;
}

PeriodOutcome Engine::advance(SimState& s, std::int64_t until, bool feed_arrivals,
                              Sinks* sinks) const {
    PeriodOutcome outcome;
    outcome.stall_cycles_total = Rat(0);
    const std::int64_t kNoEvent = std::numeric_limits<std::int64_t>::max();
    admit_arrivals(s, s.now);

    while (true) {
        // dispatch at the current instant: each idle SA takes its best
        // dependency-ready entry (blocked entries are skipped, not waited on)
        for (int m = 0; m < mas_.num_sas(); ++m) {
            if (s.running[m].job_idx >= 0) continue;
            auto& queue = s.queues[m];
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                const QueueEntry& qe = queue[qi];
                JobState& js = s.jobs[qe.job_idx];
                if (js.layers[qe.layer].phase != Phase::Pending) {
                    queue.erase(queue.begin() + qi);
                    --qi;
                    continue;
                }
                if (!pred_finished(s, qe.job_idx, qe.layer)) continue;
                const LayerCost& cost = table_.at(js.job.model_id, qe.layer, m);
                SjState& sj = js.layers[qe.layer];
                set_phase(js, qe.layer, Phase::Running);
                sj.sa = m;
                sj.start = s.now;
                sj.progress = Rat(0);
                sj.cost = cost.cycles;
                sj.bandwidth = cost.bandwidth;
                s.running[m] = {qe.job_idx, qe.layer};
                if (sinks && sinks->log)
                    sinks->log->push_back({s.now, EventKind::Start, js.job.job_id,
                                           qe.layer, m});
                queue.erase(queue.begin() + qi);
                break;
            }
        }

        Rat rate = current_rate(s);

        std::int64_t next_completion = kNoEvent;
        for (const RunSlot& slot : s.running) {
            if (slot.job_idx < 0) continue;
            const SjState& sj = s.jobs[slot.job_idx].layers[slot.layer];
            Rat remaining = Rat(static_cast<long>(sj.cost)) - sj.progress;
            std::int64_t t = s.now + rat_ceil(remaining / rate);
            next_completion = std::min(next_completion, t);
        }

        std::int64_t next_drop = kNoEvent;
        for (const JobState& js : s.jobs) {
            if (js.resolved) continue;
            bool any_pending = false;
            for (const SjState& sj : js.layers)
                if (sj.phase == Phase::Pending) { any_pending = true; break; }
            if (any_pending) next_drop = std::min(next_drop, js.deadline + 1);
        }

        std::int64_t next_arrival = kNoEvent;
        if (feed_arrivals && s.next_arrival < trace_.size())
            next_arrival = trace_[s.next_arrival].arrival_cycle;

        std::int64_t u = std::min({next_completion, next_drop, next_arrival});
        if (until >= 0) u = std::min(u, until);
        if (u == kNoEvent) break;  // drain mode with nothing left to happen

        // progress accrues at the current rate across [now, u)
        if (u > s.now) {
            Rat span(static_cast<long>(u - s.now));
            int n_running = 0;
            for (RunSlot& slot : s.running) {
                if (slot.job_idx < 0) continue;
                s.jobs[slot.job_idx].layers[slot.layer].progress += rate * span;
                ++n_running;
            }
            if (n_running > 0 && rate < 1) {
                Rat stall = Rat(static_cast<long>(n_running)) * span * (Rat(1) - rate);
                outcome.stall_cycles_total += stall;
                if (sinks && sinks->stall) *sinks->stall += stall;
            }
            s.now = u;
        }

        // completions, ascending sa
        for (int m = 0; m < mas_.num_sas(); ++m) {
            RunSlot& slot = s.running[m];
            if (slot.job_idx < 0) continue;
            JobState& js = s.jobs[slot.job_idx];
            SjState& sj = js.layers[slot.layer];
            if (sj.progress < Rat(static_cast<long>(sj.cost))) continue;
            set_phase(js, slot.layer, Phase::Finished);
            sj.finish = u;
            outcome.finished.push_back({js.job.job_id, slot.layer, u, m});
            if (sinks) {
                if (sinks->log)
                    sinks->log->push_back({u, EventKind::Finish, js.job.job_id,
                                           slot.layer, m});
                if (sinks->energy)
                    *sinks->energy +=
                        table_.at(js.job.model_id, slot.layer, m).energy_pj;
                if (sinks->busy) (*sinks->busy)[m] += u - sj.start;
                if (sinks->last_activity)
                    *sinks->last_activity = std::max(*sinks->last_activity, u);
            }
            resolve_if_done(s, slot.job_idx, u);
            slot = RunSlot{};
        }

        // deadline drops: every pending layer of an expired job goes at once
        std::vector<std::pair<int, int>> drops;
        for (int ji = 0; ji < static_cast<int>(s.jobs.size()); ++ji) {
            JobState& js = s.jobs[ji];
            if (js.resolved || js.deadline + 1 > u) continue;
            for (int l = 0; l < static_cast<int>(js.layers.size()); ++l)
                if (js.layers[l].phase == Phase::Pending) drops.emplace_back(ji, l);
        }
        std::sort(drops.begin(), drops.end(), [&](const auto& a, const auto& b) {
            const JobState& ja = s.jobs[a.first];
            const JobState& jb = s.jobs[b.first];
            if (ja.deadline != jb.deadline) return ja.deadline < jb.deadline;
            if (ja.job.job_id != jb.job.job_id) return ja.job.job_id < jb.job.job_id;
            return a.second < b.second;
        });
        for (const auto& [ji, l] : drops) {
            JobState& js = s.jobs[ji];
            set_phase(js, l, Phase::Dropped);
            js.layers[l].finish = u;
            outcome.dropped.push_back({js.job.job_id, l, u});
            if (sinks) {
                if (sinks->log)
                    sinks->log->push_back({u, EventKind::Drop, js.job.job_id, l, -1});
                if (sinks->last_activity)
                    *sinks->last_activity = std::max(*sinks->last_activity, u);
            }
            if (!js.resolved) {
                js.resolved = true;
                js.fate = JobFate::Dropped;
                js.resolve_time = u;
            }
        }

        if (feed_arrivals) admit_arrivals(s, u);

        if (until >= 0 && u == until) break;  // period ends; no dispatch here
    }

    if (until >= 0) {
        s.now = until;
        if (sinks && sinks->log)
            sinks->log->push_back({until, EventKind::Period, -1, -1, -1});
    }
    return outcome;
}

PeriodOutcome Engine::advance_period(const std::vector<Decision>& decisions,
                                     std::int64_t t_s) {
    if (t_s <= 0) throw SimError("scheduling period must be > 0");
    if (!snapshot_valid_)
        throw SimError("advance_period requires a fresh snapshot");
    build_queues(state_, decisions);
    Sinks sinks{&events_, &energy_pj_, &busy_cycles_, &last_activity_, &total_stall_};
    PeriodOutcome outcome = advance(state_, state_.now + t_s, true, &sinks);

    for (std::size_t i = 0; i < snapshot_refs_.size(); ++i) {
        auto [ji, l] = snapshot_refs_[i];
        if (state_.jobs[ji].layers[l].phase == Phase::Pending)
            outcome.residual_rq.push_back(snapshot_.ready_queue[i]);
    }
    std::sort(outcome.residual_rq.begin(), outcome.residual_rq.end(), deadline_order);
    snapshot_valid_ = false;
    for (auto& q : state_.queues) q.clear();
    return outcome;
}

std::vector<Projection> Engine::project(const std::vector<Decision>& decisions) const {
    if (!snapshot_valid_) throw SimError("project requires a fresh snapshot");
    SimState copy = state_;
    build_queues(copy, decisions);
    advance(copy, -1, false, nullptr);
    std::vector<Projection> result(snapshot_refs_.size());
    for (std::size_t i = 0; i < snapshot_refs_.size(); ++i) {
        auto [ji, l] = snapshot_refs_[i];
        const SjState& sj = copy.jobs[ji].layers[l];
        result[i].finished = sj.phase == Phase::Finished;
        result[i].time = sj.finish;
    }
    return result;
}

bool Engine::drained() const {
    if (state_.next_arrival < trace_.size()) return false;
    for (const RunSlot& slot : state_.running)
        if (slot.job_idx >= 0) return false;
    for (const JobState& js : state_.jobs)
        if (!js.resolved) return false;
    return true;
}

Metrics Engine::metrics() const {
    Metrics m;
    m.jobs_total = static_cast<std::int64_t>(state_.jobs.size());
    for (const JobState& js : state_.jobs) {
        if (!js.resolved) continue;
        switch (js.fate) {
            case JobFate::Hit: ++m.jobs_hit; break;
            case JobFate::Late: ++m.jobs_late; break;
            case JobFate::Dropped: ++m.jobs_dropped; break;
        }
    }
    m.vacuous = m.jobs_total == 0;
    m.sla_satisfaction_rate = sla_satisfaction_rate(m);
    m.total_energy_pj = energy_pj_;
    m.makespan = last_activity_;
    m.sa_busy_fraction.assign(mas_.num_sas(), 0.0);
    if (last_activity_ > 0)
        for (int i = 0; i < mas_.num_sas(); ++i)
            m.sa_busy_fraction[i] = static_cast<double>(busy_cycles_[i]) /
                                    static_cast<double>(last_activity_);
    m.stall_cycles = rat_to_double(total_stall_);
    return m;
}

std::vector<JobOutcome> Engine::job_outcomes() const {
    std::vector<JobOutcome> out;
    for (const JobState& js : state_.jobs) {
        if (!js.resolved) continue;
        out.push_back({js.job.job_id, js.job.model_id, js.fate, js.resolve_time});
    }
    return out;
}

RunResult run_trace(const MasConfig& mas, const CostTable& table,
                    const RequestTrace& trace, SchedulerPolicy& scheduler,
                    std::int64_t t_s, std::int64_t bandwidth_override) {
    if (t_s <= 0) throw ConfigError("scheduling period must be > 0");
    Engine engine(mas, table, trace, bandwidth_override);
    while (true) {
        const SystemSnapshot& snap = engine.snapshot();
        ScheduleContext ctx{snap,
                            table,
                            mas,
                            engine.bandwidth(),
                            t_s,
                            [&engine](const std::vector<Decision>& d) {
                                return engine.project(d);
                            }};
        std::vector<Decision> decisions = scheduler.schedule(ctx);
        engine.advance_period(decisions, t_s);
        if (engine.drained()) break;
    }
    RunResult result;
    result.metrics = engine.metrics();
    result.events = engine.events();
    result.job_outcomes = engine.job_outcomes();
    return result;
}

}  // namespace relmas

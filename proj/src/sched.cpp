#include "relmas/sched.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "relmas/rng.hpp"

namespace relmas {

namespace {

std::int64_t finish_on_sa(const ReadyEntry& entry,
                          const std::vector<std::int64_t>& busy,
                          std::int64_t ready_at, int sa, const CostTable& table) {
    std::int64_t start = std::max(busy[sa], ready_at);
    return start + table.at(entry.model_id, entry.layer_id, sa).cycles;
}

double rank_to_priority(std::size_t rank, std::size_t n) {
    if (n <= 1) return 1.0;
    return 1.0 - 2.0 * static_cast<double>(rank) / static_cast<double>(n - 1);
}

// Assigns SAs in the given entry order with a rolling busy horizon, so later
// picks see the load created by earlier ones. Predecessor chains are tracked
// per job; iteration orders always place a layer after its predecessor.
std::vector<int> assign_earliest_finish(const std::vector<const ReadyEntry*>& order,
                                        const SystemSnapshot& snap,
                                        const CostTable& table) {
    std::vector<std::int64_t> busy = snap.busy_until;
    std::map<std::int64_t, std::int64_t> chain_finish;  // job_id -> pred horizon
    std::vector<int> choice(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const ReadyEntry& e = *order[i];
        std::int64_t ready = 0;
        if (e.pred == PredState::Running) {
            ready = snap.busy_until[e.pred_sa];
        } else if (e.pred == PredState::Queued) {
            auto it = chain_finish.find(e.job_id);
            if (it != chain_finish.end()) ready = it->second;
        }
        int sa = earliest_finish_sa(e, busy, ready, table);
        std::int64_t finish = finish_on_sa(e, busy, ready, sa, table);
        busy[sa] = finish;
        chain_finish[e.job_id] = finish;
        choice[i] = sa;
    }
    return choice;
}

std::vector<Decision> decisions_from_order(const std::vector<std::size_t>& order,
                                           const SystemSnapshot& snap,
                                           const CostTable& table) {
    std::vector<const ReadyEntry*> ordered;
    ordered.reserve(order.size());
    for (std::size_t idx : order) ordered.push_back(&snap.ready_queue[idx]);
    std::vector<int> sa = assign_earliest_finish(ordered, snap, table);
    std::vector<Decision> decisions(order.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        decisions[order[rank]] = {rank_to_priority(rank, order.size()), sa[rank]};
    }
    return decisions;
}

class FcfsScheduler : public SchedulerPolicy {
  public:
    std::string name() const override { return "fcfs-h"; }

    std::vector<Decision> schedule(const ScheduleContext& ctx) override {
        const auto& rq = ctx.snapshot.ready_queue;
        std::vector<std::size_t> order(rq.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const ReadyEntry& x = rq[a];
            const ReadyEntry& y = rq[b];
            if (x.arrival != y.arrival) return x.arrival < y.arrival;
            if (x.job_id != y.job_id) return x.job_id < y.job_id;
            return x.layer_id < y.layer_id;
        });
        return decisions_from_order(order, ctx.snapshot, ctx.table);
    }
};

class PremaScheduler : public SchedulerPolicy {
  public:
    explicit PremaScheduler(const PremaParams& p) : p_(p) {}

    std::string name() const override { return "prema-h"; }

    std::vector<Decision> schedule(const ScheduleContext& ctx) override {
        const auto& rq = ctx.snapshot.ready_queue;
        if (rq.empty()) return {};

        struct JobInfo {
            std::int64_t job_id;
            double token;
            std::int64_t sjf_key;  // sum over pending layers of min-SA cycles
        };
        std::map<std::int64_t, JobInfo> jobs;
        for (const ReadyEntry& e : rq) {
            auto [it, fresh] = jobs.try_emplace(e.job_id);
            JobInfo& info = it->second;
            if (fresh) {
                info.job_id = e.job_id;
                double waiting =
                    static_cast<double>(ctx.snapshot.now - e.arrival);
                info.token = p_.base_token +
                             p_.slope * waiting / static_cast<double>(e.qos);
                info.sjf_key = 0;
            }
            std::int64_t best = ctx.table.at(e.model_id, e.layer_id, 0).cycles;
            for (int m = 1; m < ctx.table.num_sas(); ++m)
                best = std::min(best,
                                ctx.table.at(e.model_id, e.layer_id, m).cycles);
            info.sjf_key += best;
        }

        bool any_candidate = false;
        for (const auto& [id, info] : jobs)
            if (info.token >= p_.threshold) { any_candidate = true; break; }

        std::vector<const JobInfo*> ranked;
        for (const auto& [id, info] : jobs) ranked.push_back(&info);
        std::sort(ranked.begin(), ranked.end(),
                  [&](const JobInfo* a, const JobInfo* b) {
                      bool ca = !any_candidate || a->token >= p_.threshold;
                      bool cb = !any_candidate || b->token >= p_.threshold;
                      if (ca != cb) return ca;
                      if (a->sjf_key != b->sjf_key) return a->sjf_key < b->sjf_key;
                      return a->job_id < b->job_id;
                  });
        std::map<std::int64_t, std::size_t> job_rank;
        for (std::size_t i = 0; i < ranked.size(); ++i)
            job_rank[ranked[i]->job_id] = i;

        std::vector<std::size_t> order(rq.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const ReadyEntry& x = rq[a];
            const ReadyEntry& y = rq[b];
            std::size_t rx = job_rank[x.job_id];
            std::size_t ry = job_rank[y.job_id];
            if (rx != ry) return rx < ry;
            return x.layer_id < y.layer_id;
        });
        return decisions_from_order(order, ctx.snapshot, ctx.table);
    }

  private:
    PremaParams p_;
};

class HeraldScheduler : public SchedulerPolicy {
  public:
    std::string name() const override { return "herald"; }

    std::vector<Decision> schedule(const ScheduleContext& ctx) override {
        const auto& rq = ctx.snapshot.ready_queue;
        std::vector<std::int64_t> load = ctx.snapshot.busy_until;
        std::vector<Decision> decisions(rq.size());
        for (std::size_t i = 0; i < rq.size(); ++i) {
            const ReadyEntry& e = rq[i];
            int best = 0;
            std::int64_t best_load = 0;
            for (int m = 0; m < ctx.table.num_sas(); ++m) {
                std::int64_t c = ctx.table.at(e.model_id, e.layer_id, m).cycles;
                std::int64_t post = load[m] + c;
                if (m == 0 || post < best_load) {
                    best = m;
                    best_load = post;
                }
            }
            load[best] = best_load;
            decisions[i] = {rank_to_priority(i, rq.size()), best};
        }
        return decisions;
    }
};

class RandomScheduler : public SchedulerPolicy {
  public:
    explicit RandomScheduler(std::uint64_t seed) : rng_(seed) {}

    std::string name() const override { return "random"; }

    std::vector<Decision> schedule(const ScheduleContext& ctx) override {
        std::vector<Decision> decisions(ctx.snapshot.ready_queue.size());
        for (auto& d : decisions) {
            d.priority = rng_.uniform(-1.0, 1.0);
            d.sa_choice = static_cast<int>(
                rng_.uniform_int(static_cast<std::uint64_t>(ctx.table.num_sas())));
        }
        return decisions;
    }

  private:
    Rng rng_;
};

}  // namespace

int earliest_finish_sa(const ReadyEntry& entry,
                       const std::vector<std::int64_t>& busy_until,
                       std::int64_t ready_at, const CostTable& table) {
    int best = 0;
    std::int64_t best_finish = 0;
    for (int m = 0; m < table.num_sas(); ++m) {
        std::int64_t finish = finish_on_sa(entry, busy_until, ready_at, m, table);
        if (m == 0 || finish < best_finish) {
            best = m;
            best_finish = finish;
        }
    }
    return best;
}

std::unique_ptr<SchedulerPolicy> make_fcfs_scheduler() {
    return std::make_unique<FcfsScheduler>();
}

std::unique_ptr<SchedulerPolicy> make_prema_scheduler(const PremaParams& p) {
    return std::make_unique<PremaScheduler>(p);
}

std::unique_ptr<SchedulerPolicy> make_herald_scheduler() {
    return std::make_unique<HeraldScheduler>();
}

std::unique_ptr<SchedulerPolicy> make_random_scheduler(std::uint64_t seed) {
    return std::make_unique<RandomScheduler>(seed);
}

}  // namespace relmas

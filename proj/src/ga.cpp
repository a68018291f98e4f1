#include <algorithm>
#include <numeric>

#include "relmas/par.hpp"
#include "relmas/rl/reward.hpp"
#include "relmas/rng.hpp"
#include "relmas/sched.hpp"

namespace relmas {

namespace {

struct Chromosome {
    std::vector<double> priority;
    std::vector<int> sa;
    double fitness = 0.0;
};

class MagmaScheduler : public SchedulerPolicy {
  public:
    explicit MagmaScheduler(const GaParams& p) : p_(p), rng_(p.seed) {
        if (p_.population < 1) throw ConfigError("ga population must be >= 1");
        if (p_.generations < 0) throw ConfigError("ga generations must be >= 0");
        if (p_.tournament_k < 1) throw ConfigError("ga tournament size must be >= 1");
        if (p_.elite < 1) p_.elite = 1;
    }

    std::string name() const override { return "magma"; }

    std::vector<Decision> schedule(const ScheduleContext& ctx) override {
        std::size_t n = ctx.snapshot.ready_queue.size();
        if (n == 0) return {};
        const int m = ctx.mas.num_sas();

        rl::RewardCoefficients coeffs;
        coeffs.t_s = ctx.t_s;

        auto decode = [&](const Chromosome& c) {
            std::vector<Decision> d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = {c.priority[i], c.sa[i]};
            return d;
        };
        // SLA-shaped score, same constants as the reward, window term dropped:
        // the whole projected future counts at full weight
        auto evaluate = [&](const Chromosome& c) {
            auto projections = ctx.project(decode(c));
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                total += rl::entry_quality(coeffs, ctx.snapshot.ready_queue[i],
                                           projections[i]);
            return total;
        };
        auto evaluate_all = [&](std::vector<Chromosome>& pop) {
            par::for_each_index(pop.size(), par::default_policy(),
                                [&](std::size_t i) { pop[i].fitness = evaluate(pop[i]); });
        };
        auto random_chromosome = [&]() {
            Chromosome c;
            c.priority.resize(n);
            c.sa.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                c.priority[i] = rng_.uniform(-1.0, 1.0);
                c.sa[i] = static_cast<int>(rng_.uniform_int(m));
            }
            return c;
        };
        auto mutate = [&](Chromosome& c) {
            for (std::size_t i = 0; i < n; ++i) {
                c.priority[i] = std::clamp(
                    c.priority[i] + p_.mutation_sigma * rng_.gaussian(), -1.0, 1.0);
                if (rng_.uniform01() < p_.sa_resample_rate)
                    c.sa[i] = static_cast<int>(rng_.uniform_int(m));
            }
        };

        if (p_.population == 1) {
            Chromosome best = random_chromosome();
            best.fitness = evaluate(best);
            for (int g = 0; g < p_.generations; ++g) {
                Chromosome cand = best;
                mutate(cand);
                cand.fitness = evaluate(cand);
                if (cand.fitness > best.fitness) best = cand;
            }
            return decode(best);
        }

        std::vector<Chromosome> pop(p_.population);
        for (auto& c : pop) c = random_chromosome();
        evaluate_all(pop);

        auto by_fitness_desc = [](const Chromosome& a, const Chromosome& b) {
            return a.fitness > b.fitness;
        };
        std::stable_sort(pop.begin(), pop.end(), by_fitness_desc);

        int elite = std::min(p_.elite, p_.population - 1);
        for (int g = 0; g < p_.generations; ++g) {
            std::vector<Chromosome> next(pop.begin(), pop.begin() + elite);
            auto tournament = [&]() -> const Chromosome& {
                std::size_t best = rng_.uniform_int(pop.size());
                for (int k = 1; k < p_.tournament_k; ++k) {
                    std::size_t cand = rng_.uniform_int(pop.size());
                    if (pop[cand].fitness > pop[best].fitness) best = cand;
                }
                return pop[best];
            };
            while (static_cast<int>(next.size()) < p_.population) {
                const Chromosome& a = tournament();
                const Chromosome& b = tournament();
                Chromosome child = a;
                if (rng_.uniform01() < p_.crossover_rate) {
                    for (std::size_t i = 0; i < n; ++i) {
                        if (rng_.uniform01() < 0.5) {
                            child.priority[i] = b.priority[i];
                            child.sa[i] = b.sa[i];
                        }
                    }
                }
                mutate(child);
                next.push_back(std::move(child));
            }
            par::for_each_index(next.size() - elite, par::default_policy(),
                                [&](std::size_t i) {
                                    next[elite + i].fitness = evaluate(next[elite + i]);
                                });
            pop = std::move(next);
            std::stable_sort(pop.begin(), pop.end(), by_fitness_desc);
        }
        return decode(pop.front());
    }

  private:
    GaParams p_;
    Rng rng_;
};

}  // namespace

std::unique_ptr<SchedulerPolicy> make_magma_scheduler(const GaParams& p) {
    return std::make_unique<MagmaScheduler>(p);
}

}  // namespace relmas

#ifndef RELMAS_RL_REPLAY_HPP
#define RELMAS_RL_REPLAY_HPP

#include <cstddef>
#include <deque>
#include <vector>

#include "relmas/core.hpp"
#include "relmas/rl/encoding.hpp"
#include "relmas/rng.hpp"

namespace relmas::rl {

// One scheduling period. s_next encodes only the residual ready queue, so its
// entries are a subset of s's entries.
struct Experience {
    StateEncoding s;
    ActionEncoding a;
    double r = 0.0;
    StateEncoding s_next;
    bool terminal = false;
};

// Bounded FIFO: pushing past capacity evicts the oldest experience.
class ReplayBuffer {
  public:
    ReplayBuffer(std::size_t capacity, std::uint64_t seed)
        : capacity_(capacity), rng_(seed) {
        if (capacity_ < 1) throw ConfigError("replay capacity must be >= 1");
    }

    void push(Experience e) {
        if (buf_.size() == capacity_) buf_.pop_front();
        buf_.push_back(std::move(e));
    }

    std::size_t size() const { return buf_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Experience& at(std::size_t i) const { return buf_.at(i); }

    // Uniform i.i.d. sample. Pointers stay valid until the next push.
    std::vector<const Experience*> sample(std::size_t n) {
        if (buf_.empty()) throw SimError("sampling from an empty replay buffer");
        std::vector<const Experience*> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(&buf_[static_cast<std::size_t>(rng_.uniform_int(buf_.size()))]);
        return out;
    }

  private:
    std::size_t capacity_;
    std::deque<Experience> buf_;
    Rng rng_;
};

}  // namespace relmas::rl

#endif

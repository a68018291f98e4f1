#ifndef RELMAS_RL_NN_HPP
#define RELMAS_RL_NN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "relmas/rng.hpp"

namespace relmas::rl {

// One feature vector per timestep.
using FeatureSeq = std::vector<std::vector<double>>;

// Recurrent policy network: one LSTM layer (gate blocks ordered i, f, g, o),
// FC1 down to h/2 units with ReLU, FC2 head. tanh_head squashes the head
// output (actor); otherwise the head is linear (critic). All parameters live
// in one flat array so optimizer steps, target copies, and serialization are
// plain vector ops.
struct LstmNet {
    int in = 0;
    int h = 0;
    int out = 0;
    bool tanh_head = false;
    std::vector<double> w;

    // offsets into w: Wx[4h x in], Wh[4h x h], b[4h],
    // W1[h/2 x h], b1[h/2], W2[out x h/2], b2[out]
    std::size_t wx = 0, wh = 0, b = 0, w1 = 0, b1 = 0, w2 = 0, b2 = 0;
};

std::size_t lstm_param_count(int in, int h, int out);
LstmNet make_lstm_net(int in, int h, int out, bool tanh_head);

// Weights uniform in [-k, k] with k = 1/sqrt(fan-in); biases zero except the
// forget-gate block, which starts at +1.
void init_lstm_net(LstmNet& net, Rng& rng);

// Per-timestep activations kept for backpropagation. y holds the head output
// of every timestep.
struct LstmCache {
    FeatureSeq x, gi, gf, gg, go, c, tanh_c, hidden, a1, y;
};

LstmCache lstm_forward(const LstmNet& net, const FeatureSeq& seq);

struct LstmGrads {
    std::vector<double> param;  // aligned with net.w
    FeatureSeq input;           // dL/dx per timestep
};

// Backpropagation through time. dy holds dL/dy per timestep; pass zero
// vectors for timesteps that do not contribute to the loss.
LstmGrads lstm_backward(const LstmNet& net, const LstmCache& cache,
                        const FeatureSeq& dy);

// Adam with bias correction. Moment buffers are sized on the first step.
struct Adam {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::int64_t t = 0;
    std::vector<double> m, v;

    void step(std::vector<double>& w, const std::vector<double>& grad);
};

// target.w = tau * online.w + (1 - tau) * target.w, element-wise.
void soft_update(LstmNet& target, const LstmNet& online, double tau);

}  // namespace relmas::rl

#endif

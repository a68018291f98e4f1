#include "relmas/rl/nn.hpp"

#include <algorithm>
#include <cmath>

#include "relmas/core.hpp"

namespace relmas::rl {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// y += W x, W row-major [rows x cols]
void matvec_acc(const double* W, int rows, int cols, const double* x, double* y) {
    for (int r = 0; r < rows; ++r) {
        const double* row = W + static_cast<std::size_t>(r) * cols;
        double acc = 0.0;
        for (int c = 0; c < cols; ++c) acc += row[c] * x[c];
        y[r] += acc;
    }
}

// W += dy x^T
void outer_acc(double* W, int rows, int cols, const double* dy, const double* x) {
    for (int r = 0; r < rows; ++r) {
        double* row = W + static_cast<std::size_t>(r) * cols;
        double d = dy[r];
        if (d == 0.0) continue;
        for (int c = 0; c < cols; ++c) row[c] += d * x[c];
    }
}

// y += W^T dy
void matvec_t_acc(const double* W, int rows, int cols, const double* dy, double* y) {
    for (int r = 0; r < rows; ++r) {
        const double* row = W + static_cast<std::size_t>(r) * cols;
        double d = dy[r];
        if (d == 0.0) continue;
        for (int c = 0; c < cols; ++c) y[c] += d * row[c];
    }
}

void check_shape(const LstmNet& net) {
    if (net.in < 1 || net.h < 2 || net.out < 1 || net.h % 2 != 0)
        throw SimError("lstm net needs in >= 1, even h >= 2, out >= 1");
}

}  // namespace

std::size_t lstm_param_count(int in, int h, int out) {
    std::size_t h2 = static_cast<std::size_t>(h) / 2;
    return static_cast<std::size_t>(4 * h) * (in + h) + 4 * h  // gates + biases
           + h2 * h + h2                                       // FC1
           + static_cast<std::size_t>(out) * h2 + out;         // FC2
}

LstmNet make_lstm_net(int in, int h, int out, bool tanh_head) {
    LstmNet net;
    net.in = in;
    net.h = h;
    net.out = out;
    net.tanh_head = tanh_head;
    check_shape(net);
    std::size_t h2 = static_cast<std::size_t>(h) / 2;
    net.wx = 0;
    net.wh = net.wx + static_cast<std::size_t>(4 * h) * in;
    net.b = net.wh + static_cast<std::size_t>(4 * h) * h;
    net.w1 = net.b + static_cast<std::size_t>(4 * h);
    net.b1 = net.w1 + h2 * h;
    net.w2 = net.b1 + h2;
    net.b2 = net.w2 + static_cast<std::size_t>(out) * h2;
    net.w.assign(net.b2 + out, 0.0);
    return net;
}

void init_lstm_net(LstmNet& net, Rng& rng) {
    auto fill = [&](std::size_t off, std::size_t count, int fan_in) {
        double k = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (std::size_t i = 0; i < count; ++i) net.w[off + i] = rng.uniform(-k, k);
    };
    std::size_t h = static_cast<std::size_t>(net.h);
    std::size_t h2 = h / 2;
    fill(net.wx, 4 * h * net.in, net.in);
    fill(net.wh, 4 * h * h, net.h);
    for (std::size_t i = 0; i < 4 * h; ++i) net.w[net.b + i] = 0.0;
    for (std::size_t i = 0; i < h; ++i) net.w[net.b + h + i] = 1.0;  // forget gate
    fill(net.w1, h2 * h, net.h);
    for (std::size_t i = 0; i < h2; ++i) net.w[net.b1 + i] = 0.0;
    fill(net.w2, static_cast<std::size_t>(net.out) * h2, static_cast<int>(h2));
    for (int i = 0; i < net.out; ++i) net.w[net.b2 + i] = 0.0;
}

LstmCache lstm_forward(const LstmNet& net, const FeatureSeq& seq) {
    check_shape(net);
    for (const auto& x : seq)
        if (static_cast<int>(x.size()) != net.in)
            throw SimError("lstm input vector length does not match net input size");

    std::size_t T = seq.size();
    int h = net.h;
    int h2 = h / 2;
    LstmCache cc;
    cc.x = seq;
    auto sized = [&](FeatureSeq& s, int width) {
        s.assign(T, std::vector<double>(static_cast<std::size_t>(width), 0.0));
    };
    sized(cc.gi, h);
    sized(cc.gf, h);
    sized(cc.gg, h);
    sized(cc.go, h);
    sized(cc.c, h);
    sized(cc.tanh_c, h);
    sized(cc.hidden, h);
    sized(cc.a1, h2);
    sized(cc.y, net.out);

    std::vector<double> z(static_cast<std::size_t>(4 * h));
    const std::vector<double> zero_h(static_cast<std::size_t>(h), 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        const double* hprev = t == 0 ? zero_h.data() : cc.hidden[t - 1].data();
        const double* cprev = t == 0 ? zero_h.data() : cc.c[t - 1].data();
        for (int k = 0; k < 4 * h; ++k) z[k] = net.w[net.b + k];
        matvec_acc(net.w.data() + net.wx, 4 * h, net.in, seq[t].data(), z.data());
        matvec_acc(net.w.data() + net.wh, 4 * h, h, hprev, z.data());
        for (int k = 0; k < h; ++k) {
            cc.gi[t][k] = sigmoid(z[k]);
            cc.gf[t][k] = sigmoid(z[h + k]);
            cc.gg[t][k] = std::tanh(z[2 * h + k]);
            cc.go[t][k] = sigmoid(z[3 * h + k]);
            cc.c[t][k] = cc.gf[t][k] * cprev[k] + cc.gi[t][k] * cc.gg[t][k];
            cc.tanh_c[t][k] = std::tanh(cc.c[t][k]);
            cc.hidden[t][k] = cc.go[t][k] * cc.tanh_c[t][k];
        }
        for (int k = 0; k < h2; ++k) cc.a1[t][k] = net.w[net.b1 + k];
        matvec_acc(net.w.data() + net.w1, h2, h, cc.hidden[t].data(), cc.a1[t].data());
        for (int k = 0; k < h2; ++k)
            if (cc.a1[t][k] < 0.0) cc.a1[t][k] = 0.0;
        for (int k = 0; k < net.out; ++k) cc.y[t][k] = net.w[net.b2 + k];
        matvec_acc(net.w.data() + net.w2, net.out, h2, cc.a1[t].data(), cc.y[t].data());
        if (net.tanh_head)
            for (int k = 0; k < net.out; ++k) cc.y[t][k] = std::tanh(cc.y[t][k]);
    }
    return cc;
}

LstmGrads lstm_backward(const LstmNet& net, const LstmCache& cache,
                        const FeatureSeq& dy) {
    std::size_t T = cache.x.size();
    if (dy.size() != T) throw SimError("output grads length does not match sequence");
    for (const auto& g : dy)
        if (static_cast<int>(g.size()) != net.out)
            throw SimError("output grad vector length does not match net output size");

    int h = net.h;
    int h2 = h / 2;
    LstmGrads out;
    out.param.assign(net.w.size(), 0.0);
    out.input.assign(T, std::vector<double>(static_cast<std::size_t>(net.in), 0.0));

    std::vector<double> dh(static_cast<std::size_t>(h), 0.0);   // carried to t-1
    std::vector<double> dc(static_cast<std::size_t>(h), 0.0);
    std::vector<double> dy_pre(static_cast<std::size_t>(net.out));
    std::vector<double> da1(static_cast<std::size_t>(h2));
    std::vector<double> dz(static_cast<std::size_t>(4 * h));
    const std::vector<double> zero_h(static_cast<std::size_t>(h), 0.0);

    for (std::size_t ti = T; ti-- > 0;) {
        const double* hprev = ti == 0 ? zero_h.data() : cache.hidden[ti - 1].data();
        const double* cprev = ti == 0 ? zero_h.data() : cache.c[ti - 1].data();

        for (int k = 0; k < net.out; ++k) {
            double d = dy[ti][k];
            if (net.tanh_head) d *= 1.0 - cache.y[ti][k] * cache.y[ti][k];
            dy_pre[k] = d;
            out.param[net.b2 + k] += d;
        }
        outer_acc(out.param.data() + net.w2, net.out, h2, dy_pre.data(),
                  cache.a1[ti].data());
        std::fill(da1.begin(), da1.end(), 0.0);
        matvec_t_acc(net.w.data() + net.w2, net.out, h2, dy_pre.data(), da1.data());
        for (int k = 0; k < h2; ++k) {
            if (cache.a1[ti][k] <= 0.0) da1[k] = 0.0;  // ReLU gate
            out.param[net.b1 + k] += da1[k];
        }
        outer_acc(out.param.data() + net.w1, h2, h, da1.data(),
                  cache.hidden[ti].data());
        matvec_t_acc(net.w.data() + net.w1, h2, h, da1.data(), dh.data());

        for (int k = 0; k < h; ++k) {
            double go = cache.go[ti][k];
            double tc = cache.tanh_c[ti][k];
            double d_go = dh[k] * tc;
            dc[k] += dh[k] * go * (1.0 - tc * tc);
            double gi = cache.gi[ti][k];
            double gf = cache.gf[ti][k];
            double gg = cache.gg[ti][k];
            dz[k] = dc[k] * gg * gi * (1.0 - gi);
            dz[h + k] = dc[k] * cprev[k] * gf * (1.0 - gf);
            dz[2 * h + k] = dc[k] * gi * (1.0 - gg * gg);
            dz[3 * h + k] = d_go * go * (1.0 - go);
            dc[k] *= gf;  // carried to t-1
        }
        outer_acc(out.param.data() + net.wx, 4 * h, net.in, dz.data(),
                  cache.x[ti].data());
        outer_acc(out.param.data() + net.wh, 4 * h, h, dz.data(), hprev);
        for (int k = 0; k < 4 * h; ++k) out.param[net.b + k] += dz[k];
        matvec_t_acc(net.w.data() + net.wx, 4 * h, net.in, dz.data(),
                     out.input[ti].data());
        std::fill(dh.begin(), dh.end(), 0.0);
        matvec_t_acc(net.w.data() + net.wh, 4 * h, h, dz.data(), dh.data());
    }
    return out;
}

void Adam::step(std::vector<double>& w, const std::vector<double>& grad) {
    if (grad.size() != w.size()) throw SimError("adam grad size mismatch");
    if (m.size() != w.size()) {
        m.assign(w.size(), 0.0);
        v.assign(w.size(), 0.0);
    }
    ++t;
    double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < w.size(); ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
        w[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
    }
}

void soft_update(LstmNet& target, const LstmNet& online, double tau) {
    if (target.w.size() != online.w.size())
        throw SimError("soft update across mismatched nets");
    for (std::size_t i = 0; i < target.w.size(); ++i)
        target.w[i] = tau * online.w[i] + (1.0 - tau) * target.w[i];
}

}  // namespace relmas::rl

#include "relmas/rl/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace relmas::rl {

namespace {

constexpr char kMagic[8] = {'R', 'E', 'L', 'M', 'A', 'S', 'C', 'P'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_i64(std::string& out, std::int64_t v) {
    put_u64(out, static_cast<std::uint64_t>(v));
}

void put_f64(std::string& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

void put_array(std::string& out, const std::vector<double>& w) {
    put_u64(out, w.size());
    for (double v : w) put_f64(out, v);
}

struct Reader {
    const std::string& data;
    std::size_t pos = 0;

    void need(std::size_t n) {
        if (pos + n > data.size()) throw ConfigError("checkpoint file is truncated");
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos + i]))
                 << (8 * i);
        pos += 8;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + i]))
                 << (8 * i);
        pos += 4;
        return v;
    }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    double f64() { return std::bit_cast<double>(u64()); }
    void array(std::vector<double>& w) {
        std::uint64_t n = u64();
        if (n != w.size()) throw ConfigError("checkpoint weight array size mismatch");
        for (std::uint64_t i = 0; i < n; ++i) w[i] = f64();
    }
};

}  // namespace

void save_checkpoint(const std::string& path, const TrainState& state) {
    std::string out;
    out.append(kMagic, sizeof(kMagic));
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(state.model.actor.h));
    put_u32(out, static_cast<std::uint32_t>(state.model.num_sas));
    put_i64(out, state.model.norms.t_s);
    put_i64(out, state.model.norms.bandwidth);
    put_f64(out, state.model.norms.cap);
    put_i64(out, state.episode);
    put_i64(out, state.steps);
    put_f64(out, state.sigma);
    put_array(out, state.model.actor.w);
    put_array(out, state.model.critic.w);
    put_array(out, state.model.actor_target.w);
    put_array(out, state.model.critic_target.w);

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open checkpoint path for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw ConfigError("failed writing checkpoint: " + path);
}

TrainState load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open checkpoint: " + path);
    std::string data((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());

    Reader r{data};
    r.need(sizeof(kMagic));
    if (std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0)
        throw ConfigError("not a relmas checkpoint: " + path);
    r.pos = sizeof(kMagic);
    if (r.u32() != kVersion) throw ConfigError("unsupported checkpoint version");

    int h = static_cast<int>(r.u32());
    int m = static_cast<int>(r.u32());
    if (h < 2 || h % 2 != 0 || m < 1) throw ConfigError("checkpoint header is invalid");

    NormConstants norms;
    norms.t_s = r.i64();
    norms.bandwidth = r.i64();
    norms.cap = r.f64();

    TrainState st;
    st.episode = r.i64();
    st.steps = r.i64();
    st.sigma = r.f64();

    int f_in = state_feature_count(m);
    int g = action_feature_count(m);
    st.model.num_sas = m;
    st.model.norms = norms;
    st.model.actor = make_lstm_net(f_in, h, g, true);
    st.model.critic = make_lstm_net(f_in + g, h, 1, false);
    st.model.actor_target = st.model.actor;
    st.model.critic_target = st.model.critic;
    r.array(st.model.actor.w);
    r.array(st.model.critic.w);
    r.array(st.model.actor_target.w);
    r.array(st.model.critic_target.w);
    if (r.pos != data.size()) throw ConfigError("checkpoint has trailing bytes");
    return st;
}

}  // namespace relmas::rl

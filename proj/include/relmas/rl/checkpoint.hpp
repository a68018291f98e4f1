#ifndef RELMAS_RL_CHECKPOINT_HPP
#define RELMAS_RL_CHECKPOINT_HPP

#include <string>

#include "relmas/rl/ddpg.hpp"

namespace relmas::rl {

// Versioned little-endian binary container: magic, version, h, M,
// normalization constants, training progress, then the four weight arrays
// (actor, critic, actor target, critic target) as row-major 64-bit floats.
void save_checkpoint(const std::string& path, const TrainState& state);
TrainState load_checkpoint(const std::string& path);

}  // namespace relmas::rl

#endif

#ifndef RELMAS_EXP_COMMANDS_HPP
#define RELMAS_EXP_COMMANDS_HPP

#include <string>
#include <vector>

#include "relmas/exp/config.hpp"
#include "relmas/exp/csv.hpp"

namespace relmas::exp {

struct CommandOutputs {
    std::vector<std::string> files;  // paths written, in emission order
};

// Workload trace as JSON lines under a '#' provenance header (seed, params).
CommandOutputs cmd_gen_workload(const ExperimentConfig& cfg);

// DDPG training with periodic checkpoints; resumes from an existing
// checkpoint file and continues the episode numbering. Writes the checkpoint,
// a JSON sidecar describing the trainer, and the learning-curve CSV.
CommandOutputs cmd_train(const ExperimentConfig& cfg);

// Every selected scheduler on identical per-seed traces; emits the result
// table and a grouped bar chart of SLA rates built from the CSV.
CommandOutputs cmd_compare(const ExperimentConfig& cfg);

// Mean SLA per (scheduler, bandwidth), normalized to each scheduler's best
// point; emits the table and a line chart built from the CSV.
CommandOutputs cmd_sweep_bandwidth(const ExperimentConfig& cfg);

// Policy-network energy overhead over the hidden-size x period grid on one
// fixed trace; emits the table and a line chart built from the CSV.
CommandOutputs cmd_overhead(const ExperimentConfig& cfg);

// argv-level entry point: subcommand dispatch plus exit-code mapping
// (0 success, 1 config error, 2 runtime error).
int run_cli(int argc, const char* const* argv);

}  // namespace relmas::exp

#endif

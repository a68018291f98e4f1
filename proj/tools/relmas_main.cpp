#include "relmas/exp/commands.hpp"

int main(int argc, char** argv) { return relmas::exp::run_cli(argc, argv); }

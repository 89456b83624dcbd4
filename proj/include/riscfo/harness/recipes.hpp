#ifndef RISCFO_HARNESS_RECIPES_HPP
#define RISCFO_HARNESS_RECIPES_HPP

#include <string>
#include <vector>

#include "riscfo/harness/config.hpp"

namespace riscfo::harness {

/// Figure presets:
///   fig2   baseline NMSE vs M under fixed CFO, closed-form overlay (N=64, L=8, L_CP=10)
///   fig3   analytic complexity vs M (N=1024, L=102, N_p=N, N_z=4)
///   fig4a  CFO MSE vs SNR, uniform CFO, L=32, L_CP=34
///   fig4b  proposed vs baseline NMSE vs SNR with matched pilot usage
/// The fig4 (M, N) grid is a placeholder: M in {16, 64}, N = 256.
/// Throws ConfigError for any other name.
ExperimentConfig recipe(const std::string& name);

std::vector<std::string> recipe_names();

}  // namespace riscfo::harness

#endif  // RISCFO_HARNESS_RECIPES_HPP

#ifndef RISCFO_HARNESS_SWEEP_HPP
#define RISCFO_HARNESS_SWEEP_HPP

#include <map>
#include <string>
#include <vector>

#include "riscfo/harness/monte_carlo.hpp"

namespace riscfo::harness {

/// Parsed "key=values,key=values" sweep specification. Each value list is
/// either a scalar ("64"), an inclusive range ("1:1:100" as start:step:stop)
/// or an explicit list ("0.005|0.01|0.05"). "inf" is accepted as a value.
using SweepSpec = std::map<std::string, std::vector<double>>;

/// Throws ConfigError on malformed input.
SweepSpec parse_sweep(const std::string& text);

/// Closed-form NMSE curves over M. Keys: M, eps, N, L, L_CP, snr_db
/// (defaults M=0:1:100, eps=0.01, N=64, L=8, L_CP=10, snr_db=inf).
std::vector<CurvePoint> closed_form_sweep(const SweepSpec& spec);

/// Complexity curves over M. Keys: M, N, L, N_p, N_z
/// (defaults M=1:1:100, N=1024, L=102, N_p=N, N_z=4).
std::vector<CurvePoint> complexity_sweep(const SweepSpec& spec);

}  // namespace riscfo::harness

#endif  // RISCFO_HARNESS_SWEEP_HPP

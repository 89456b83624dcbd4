#ifndef RISCFO_HARNESS_CSV_HPP
#define RISCFO_HARNESS_CSV_HPP

#include <filesystem>
#include <ostream>
#include <vector>

#include "riscfo/harness/monte_carlo.hpp"

namespace riscfo::harness {

/// Header `x,metric,mean,ci95,trials`; numbers at 12 significant digits;
/// rows sorted by (metric, x). Throws riscfo::IoError naming the path.
void emit_csv(const std::vector<CurvePoint>& points, const std::filesystem::path& path);
void write_csv(const std::vector<CurvePoint>& points, std::ostream& os);

/// Inverse of emit_csv. Metric labels must not contain commas.
std::vector<CurvePoint> read_csv(const std::filesystem::path& path);

}  // namespace riscfo::harness

#endif  // RISCFO_HARNESS_CSV_HPP

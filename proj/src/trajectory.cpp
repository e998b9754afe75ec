#include "longwave/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lw {

Field FieldTrajectory::at(double t) const {
  if (times.empty()) throw std::runtime_error("empty trajectory");
  const double slack = 1e-9 * std::max(1.0, std::abs(times.back()));
  if (t < times.front() - slack || t > times.back() + slack)
    throw std::runtime_error("interpolation gap: t=" + std::to_string(t) + " outside [" +
                             std::to_string(times.front()) + ", " + std::to_string(times.back()) +
                             "]");
  t = std::clamp(t, times.front(), times.back());

  // Locate the bracketing interval, then center a 4-point stencil on it.
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - times.begin());
  if (hi == 0) hi = 1;
  if (hi >= times.size()) hi = times.size() - 1;

  const std::size_t m = std::min<std::size_t>(4, times.size());
  std::size_t first = (hi > 1) ? hi - 2 : 0;
  first = std::min(first, times.size() - m);

  // Exact hit: return the snapshot (keeps stored states bitwise intact).
  for (std::size_t i = first; i < first + m; ++i)
    if (times[i] == t) return fields[i];

  Field out(fields[0].grid);
  for (std::size_t i = first; i < first + m; ++i) {
    double w = 1.0;
    for (std::size_t j = first; j < first + m; ++j) {
      if (j == i) continue;
      w *= (t - times[j]) / (times[i] - times[j]);
    }
    const Field& fi = fields[i];
    for (std::size_t p = 0; p < out.size(); ++p) out.v[p] += w * fi.v[p];
  }
  return out;
}

}  // namespace lw

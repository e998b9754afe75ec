#pragma once

#include <vector>

#include "longwave/grid.hpp"

namespace lw {

// Snapshots of one scalar field along a time axis, with dense evaluation by
// 4-point Lagrange interpolation.  Snapshot strides are chosen by the callers
// so the cubic interpolation error sits far below the solver tolerances.
struct FieldTrajectory {
  std::vector<double> times;
  std::vector<Field> fields;

  void push(double t, const Field& f) {
    if (!times.empty() && !(t > times.back()))
      throw std::invalid_argument("trajectory times must increase strictly");
    times.push_back(t);
    fields.push_back(f);
  }

  bool covers(double t, double slack = 1e-9) const {
    return !times.empty() && t >= times.front() - slack && t <= times.back() + slack;
  }

  double t_begin() const { return times.front(); }
  double t_end() const { return times.back(); }

  // Interpolated value at time t (cubic where four snapshots exist).
  Field at(double t) const;
};

}  // namespace lw

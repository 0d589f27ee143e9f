#pragma once

// Two-dimensional driver by Strang splitting. Each sweep runs the 1D scheme
// along grid lines and carries the tangential velocity as a passive scalar.
// The stiffness is constant in 2D.

#include <array>
#include <iosfwd>
#include <vector>

#include "hemogrp/solver1d.hpp"

namespace hemogrp {

struct Grid2D {
  int nx = 0;
  int ny = 0;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::vector<Conserved> U;        // (A, A u, A v), row-major: index j * nx + i
  std::vector<Slopes> slope_x;     // d/dx of (A, u, v)
  std::vector<Slopes> slope_y;     // d/dy of (A, u, v)
  StiffnessProfile k = StiffnessProfile::constant(5.0);
  ModelParams params;
  double t = 0.0;

  Grid2D() = default;
  /// Throws std::invalid_argument for a non-constant stiffness profile.
  Grid2D(int nx, int ny, double x_min, double x_max, double y_min, double y_max,
         StiffnessProfile k, ModelParams params);

  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return (y_max - y_min) / ny; }
  double cx(int i) const { return x_min + (i + 0.5) * dx(); }
  double cy(int j) const { return y_min + (j + 0.5) * dy(); }
  Conserved& at(int i, int j) { return U[static_cast<std::size_t>(j) * nx + i]; }
  const Conserved& at(int i, int j) const { return U[static_cast<std::size_t>(j) * nx + i]; }

  void validate() const;
};

struct SweepReport {
  std::array<int, kCaseTagCount> tags{};
  int positivity_guards = 0;
  int limiter_clips = 0;
};

/// cfl * min(dx / max(|u| + c), dy / max(|v| + c)).
double cfl_dt(const Grid2D& grid, double cfl);

/// Advance every row (sweep_x) or column (sweep_y) by dt with the 1D scheme.
/// Stored slopes of the sweep direction are re-limited against the current
/// averages first, since the other sweep has moved the data underneath them.
SweepReport sweep_x(Grid2D& grid, double dt, const StepOptions& opts = {});
SweepReport sweep_y(Grid2D& grid, double dt, const StepOptions& opts = {});

enum class SplitOrder { XYX, YXY };

/// L_x(dt/2) L_y(dt) L_x(dt/2) (or with x and y exchanged).
SweepReport strang_step(Grid2D& grid, double dt, const StepOptions& opts = {},
                        SplitOrder order = SplitOrder::XYX);

/// Quadrant states in the usual order: q[0] for x > x0, y > y0, then
/// counter-clockwise. Cell averages take the value at the cell center;
/// slopes are zeroed.
void four_quadrant_init(Grid2D& grid, const std::array<Primitive, 4>& q,
                        double x0, double y0);

/// Header `x,y,A,u,v` preceded by a `#` line with the grid layout. Rows are
/// written row-major (x fastest) with 17 significant digits.
void write_csv(const Grid2D& grid, std::ostream& os);

}  // namespace hemogrp

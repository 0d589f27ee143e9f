#pragma once

// Cell-centered finite-volume driver in one space dimension.
//
// Each cell carries its average U_j = (A, Au, Av) and limited slopes of the
// primitive variables (A, u, v). The transverse velocity v is zero in pure 1D
// runs; the 2D driver reuses this code line by line and carries the
// tangential velocity there.

#include <array>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "hemogrp/grp.hpp"
#include "hemogrp/model.hpp"

namespace hemogrp {

/// Thrown when an update leaves a cell with non-positive area, or when an
/// interface problem cannot be solved. `cell()` is the offending cell or
/// interface index.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int cell)
      : std::runtime_error(what), cell_(cell) {}
  int cell() const { return cell_; }

 private:
  int cell_;
};

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  std::vector<Conserved> U;
  std::vector<Slopes> slope;  // d/dx of (A, u, v)
  StiffnessProfile k = StiffnessProfile::constant(1.0);
  ModelParams params;
  double t = 0.0;

  Grid1D() = default;
  /// N cells of the uniform state (A = Ae, u = 0) with zero slopes.
  Grid1D(double x_min, double x_max, int cells, StiffnessProfile k,
         ModelParams params);

  int size() const { return static_cast<int>(U.size()); }
  double dx() const { return (x_max - x_min) / size(); }
  double center(int j) const { return x_min + (j + 0.5) * dx(); }
  /// Position of interface i, between cells i-1 and i (i = 0..N).
  double face(int i) const { return x_min + i * dx(); }

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

struct BoundaryPolicy {
  enum class Kind { Outflow, Periodic, Dirichlet };
  Kind kind = Kind::Outflow;
  Conserved left;   // pinned ghost states (Dirichlet only)
  Conserved right;

  static BoundaryPolicy outflow() { return {}; }
  static BoundaryPolicy periodic() { return {Kind::Periodic, {}, {}}; }
  static BoundaryPolicy dirichlet(const Conserved& l, const Conserved& r) {
    return {Kind::Dirichlet, l, r};
  }
};

/// One ghost cell on each side, with its slope.
struct Ghosts {
  Conserved left;
  Slopes left_slope;
  Conserved right;
  Slopes right_slope;
};

Ghosts apply_boundaries(const Grid1D& grid, const BoundaryPolicy& policy);

/// Extra source B(x, t). Cells receive dt * B(x_j, t_n + dt/2); interface
/// time derivatives also include B(x_{i}, t_n).
using SourceFn = std::function<Conserved(double x, double t)>;

struct StepOptions {
  // Limiter weight in minmod(alpha dU-, sigma-, alpha dU+). Values below 1
  // clip every smooth slope to alpha times a one-sided difference, which
  // costs an order of accuracy; 1.9 keeps the scheme second order.
  double alpha = 1.9;
  BoundaryPolicy boundary;
  SourceFn source;
  SonicClosure closure = SonicClosure::AxisDrift;
};

struct StepReport {
  double dt = 0.0;
  double max_speed = 0.0;
  std::array<int, kCaseTagCount> tags{};
  int positivity_guards = 0;  // interfaces where an extrapolated area was <= 0
  int limiter_clips = 0;      // slope components changed by the limiter
};

/// cfl * dx / max_j (|u_j| + c_j). Throws std::invalid_argument unless
/// 0 < cfl <= 1, std::domain_error on non-finite speeds.
double cfl_dt(const Grid1D& grid, double cfl);

/// Interface values and primitive slopes at face i for the GRP solver.
/// An extrapolated area <= 0 drops that side's slope; `guarded` (optional)
/// is incremented for each such side.
GrpInput reconstruct_interface(const Grid1D& grid, const Ghosts& ghosts, int i,
                               int* guarded = nullptr);

/// minmod(a, b, c): the argument of least magnitude if all share a sign,
/// else 0.
double minmod(double a, double b, double c);
/// Component-wise minmod(alpha*left_diff, center, alpha*right_diff).
Slopes minmod_slope(double alpha, const Slopes& left_diff, const Slopes& center,
                    const Slopes& right_diff);

/// One GRP step. Requires dt <= cfl_dt(grid, 1). Leaves the grid untouched
/// and throws SolverError if any cell would lose positivity.
///
/// New slopes: the interface values U(x_{j+1/2}, t_n + dt) from the Taylor
/// expansion give a trial slope per cell, which is converted to primitive
/// form at the new average and limited against neighbouring averages.
StepReport step(Grid1D& grid, double dt, const StepOptions& opts = {});

/// MUSCL-Hancock baseline: limited central slopes, interface values advanced
/// dt/2 with one-sided rates, exact Riemann flux, same source quadrature.
StepReport godunov_step(Grid1D& grid, double dt, const StepOptions& opts = {});

/// Header `x,A,u`, one row per cell, 17 significant digits.
void write_csv(const Grid1D& grid, std::ostream& os);

}  // namespace hemogrp

#include "hemogrp/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace hemogrp {

namespace {

// In a column the normal velocity is v, so (A, Av, Au) plays the role of
// (A, q, r) in the 1D line.
Conserved swap_uv(const Conserved& U) { return {U.A, U.r, U.q}; }
Slopes swap_uv(const Slopes& s) { return {s.A, s.v, s.u}; }

void add_report(SweepReport& acc, const StepReport& r) {
  for (int n = 0; n < kCaseTagCount; ++n) acc.tags[n] += r.tags[n];
  acc.positivity_guards += r.positivity_guards;
  acc.limiter_clips += r.limiter_clips;
}

void add_report(SweepReport& acc, const SweepReport& r) {
  for (int n = 0; n < kCaseTagCount; ++n) acc.tags[n] += r.tags[n];
  acc.positivity_guards += r.positivity_guards;
  acc.limiter_clips += r.limiter_clips;
}

// Re-limit the stored line slopes against the current averages.
void relimit(Grid1D& line, const BoundaryPolicy& bc, double alpha) {
  const Ghosts g = apply_boundaries(line, bc);
  const int N = line.size();
  const double inv = 1.0 / line.dx();
  std::vector<Primitive> W(N + 2);
  W[0] = to_primitive(g.left);
  W[N + 1] = to_primitive(g.right);
  for (int j = 0; j < N; ++j) W[j + 1] = to_primitive(line.U[j]);
  for (int j = 0; j < N; ++j) {
    const Primitive &a = W[j], &c = W[j + 1], &b = W[j + 2];
    line.slope[j] = minmod_slope(alpha, {inv * (c.A - a.A), inv * (c.u - a.u), inv * (c.v - a.v)},
                                 line.slope[j],
                                 {inv * (b.A - c.A), inv * (b.u - c.u), inv * (b.v - c.v)});
  }
}

SweepReport sweep(Grid2D& grid, double dt, const StepOptions& opts, bool along_x) {
  SweepReport rep;
  const int lines = along_x ? grid.ny : grid.nx;
  const int len = along_x ? grid.nx : grid.ny;
  Grid1D line(along_x ? grid.x_min : grid.y_min, along_x ? grid.x_max : grid.y_max, len,
              grid.k, grid.params);
  std::vector<Slopes>& slopes = along_x ? grid.slope_x : grid.slope_y;
  // Work on a copy so that a failed line leaves the grid untouched.
  std::vector<Conserved> U = grid.U;
  std::vector<Slopes> S = slopes;
  auto index = [&](int l, int n) {
    return along_x ? static_cast<std::size_t>(l) * grid.nx + n
                   : static_cast<std::size_t>(n) * grid.nx + l;
  };
  for (int l = 0; l < lines; ++l) {
    for (int n = 0; n < len; ++n) {
      const std::size_t p = index(l, n);
      line.U[n] = along_x ? U[p] : swap_uv(U[p]);
      line.slope[n] = along_x ? S[p] : swap_uv(S[p]);
    }
    line.t = grid.t;
    relimit(line, opts.boundary, opts.alpha);
    try {
      add_report(rep, step(line, dt, opts));
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + (along_x ? " in row " : " in column ") +
                            std::to_string(l),
                        e.cell());
    }
    for (int n = 0; n < len; ++n) {
      const std::size_t p = index(l, n);
      U[p] = along_x ? line.U[n] : swap_uv(line.U[n]);
      S[p] = along_x ? line.slope[n] : swap_uv(line.slope[n]);
    }
  }
  grid.U = std::move(U);
  slopes = std::move(S);
  return rep;
}

}  // namespace

Grid2D::Grid2D(int nx_, int ny_, double x_min_, double x_max_, double y_min_, double y_max_,
               StiffnessProfile k_, ModelParams params_)
    : nx(nx_),
      ny(ny_),
      x_min(x_min_),
      x_max(x_max_),
      y_min(y_min_),
      y_max(y_max_),
      U(static_cast<std::size_t>(std::max(nx_, 0)) * std::max(ny_, 0),
        Conserved{params_.area_eq(), 0.0, 0.0}),
      slope_x(U.size(), Slopes{}),
      slope_y(U.size(), Slopes{}),
      k(std::move(k_)),
      params(params_) {
  validate();
}

void Grid2D::validate() const {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid needs at least one cell per direction");
  if (!(x_max > x_min) || !(y_max > y_min)) throw std::invalid_argument("empty domain");
  if (!k.is_constant()) throw std::invalid_argument("2D runs need a constant stiffness");
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  if (U.size() != n || slope_x.size() != n || slope_y.size() != n)
    throw std::invalid_argument("array size mismatch");
  for (const Conserved& c : U)
    if (!(c.A > 0.0)) throw std::invalid_argument("cell area must be positive");
}

double cfl_dt(const Grid2D& grid, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  const double k = grid.k.value(0.0);
  double sx = 0.0, sy = 0.0;
  for (const Conserved& U : grid.U) {
    const Primitive w = to_primitive(U);
    const double c = wave_speed(w.A, k, grid.params);
    sx = std::max(sx, std::abs(w.u) + c);
    sy = std::max(sy, std::abs(w.v) + c);
  }
  if (!std::isfinite(sx) || !std::isfinite(sy)) throw std::domain_error("non-finite wave speed");
  return cfl * std::min(grid.dx() / sx, grid.dy() / sy);
}

SweepReport sweep_x(Grid2D& grid, double dt, const StepOptions& opts) {
  return sweep(grid, dt, opts, true);
}

SweepReport sweep_y(Grid2D& grid, double dt, const StepOptions& opts) {
  return sweep(grid, dt, opts, false);
}

SweepReport strang_step(Grid2D& grid, double dt, const StepOptions& opts, SplitOrder order) {
  Grid2D work = grid;
  SweepReport rep;
  const bool xyx = order == SplitOrder::XYX;
  add_report(rep, sweep(work, 0.5 * dt, opts, xyx));
  work.t = grid.t + 0.5 * dt;
  add_report(rep, sweep(work, dt, opts, !xyx));
  add_report(rep, sweep(work, 0.5 * dt, opts, xyx));
  work.t = grid.t + dt;
  grid = std::move(work);
  return rep;
}

void four_quadrant_init(Grid2D& grid, const std::array<Primitive, 4>& q, double x0, double y0) {
  for (const Primitive& w : q)
    if (!(w.A > 0.0)) throw std::invalid_argument("quadrant area must be positive");
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const bool east = grid.cx(i) > x0, north = grid.cy(j) > y0;
      const int n = north ? (east ? 0 : 1) : (east ? 3 : 2);
      grid.at(i, j) = to_conserved(q[n]);
    }
  }
  std::fill(grid.slope_x.begin(), grid.slope_x.end(), Slopes{});
  std::fill(grid.slope_y.begin(), grid.slope_y.end(), Slopes{});
}

void write_csv(const Grid2D& grid, std::ostream& os) {
  os << std::setprecision(17);
  os << "# nx=" << grid.nx << " ny=" << grid.ny << " x_min=" << grid.x_min
     << " x_max=" << grid.x_max << " y_min=" << grid.y_min << " y_max=" << grid.y_max
     << " t=" << grid.t << '\n';
  os << "x,y,A,u,v\n";
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Primitive w = to_primitive(grid.at(i, j));
      os << grid.cx(i) << ',' << grid.cy(j) << ',' << w.A << ',' << w.u << ',' << w.v << '\n';
    }
  }
}

}  // namespace hemogrp

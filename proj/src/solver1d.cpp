#include "hemogrp/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

namespace hemogrp {

namespace {

Conserved operator+(const Conserved& a, const Conserved& b) {
  return {a.A + b.A, a.q + b.q, a.r + b.r};
}
Conserved operator-(const Conserved& a, const Conserved& b) {
  return {a.A - b.A, a.q - b.q, a.r - b.r};
}
Conserved operator*(double s, const Conserved& a) { return {s * a.A, s * a.q, s * a.r}; }

Primitive operator+(const Primitive& w, const Slopes& s) { return {w.A + s.A, w.u + s.u, w.v + s.v}; }
Slopes operator*(double h, const Slopes& s) { return {h * s.A, h * s.u, h * s.v}; }
Slopes diff(const Primitive& a, const Primitive& b, double inv_dx) {
  return {inv_dx * (a.A - b.A), inv_dx * (a.u - b.u), inv_dx * (a.v - b.v)};
}

// Everything the cell update needs from one interface.
struct Face {
  Conserved F;     // numerical flux, transverse momentum included
  double L = 0.0;  // coupling coefficient at the half-step state
  double k = 0.0;
  Conserved next;  // U(x_{i}, t_n + dt) from the Taylor expansion (GRP only)
};

std::string where(const Grid1D& g, int i) {
  std::ostringstream os;
  os << " at interface " << i << " (x = " << g.face(i) << ", t = " << g.t << ")";
  return os.str();
}

void check_dt(const Grid1D& grid, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const double limit = cfl_dt(grid, 1.0);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << dt << " exceeds the stability limit " << limit;
    throw std::invalid_argument(os.str());
  }
}

double max_speed(const Grid1D& grid) {
  double s = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    const Primitive w = to_primitive(grid.U[j]);
    s = std::max(s, std::abs(w.u) + wave_speed(w.A, grid.k.value(grid.center(j)), grid.params));
  }
  return s;
}

const Conserved& cell(const Grid1D& g, const Ghosts& gh, int j) {
  if (j < 0) return gh.left;
  if (j >= g.size()) return gh.right;
  return g.U[j];
}

const Slopes& cell_slope(const Grid1D& g, const Ghosts& gh, int j) {
  if (j < 0) return gh.left_slope;
  if (j >= g.size()) return gh.right_slope;
  return g.slope[j];
}

// Faces 0..N. With periodic boundaries face N is a copy of face 0 so that the
// flux sums telescope exactly.
template <class FaceFn>
std::vector<Face> all_faces(const Grid1D& grid, const BoundaryPolicy& bc, FaceFn fn) {
  const int N = grid.size();
  std::vector<Face> faces(N + 1);
  const bool periodic = bc.kind == BoundaryPolicy::Kind::Periodic;
  for (int i = 0; i <= N; ++i) {
    if (periodic && i == N) {
      faces[N] = faces[0];
      continue;
    }
    try {
      faces[i] = fn(i);
    } catch (const SolverError&) {
      throw;
    } catch (const std::exception& e) {
      throw SolverError(std::string(e.what()) + where(grid, i), i);
    }
  }
  return faces;
}

// Quasi-conservative update into a fresh array; the grid is only touched
// once every cell is known to stay positive.
std::vector<Conserved> update_cells(const Grid1D& grid, const std::vector<Face>& faces,
                                    double dt, const StepOptions& opts) {
  const int N = grid.size();
  const double dx = grid.dx();
  const double lam = dt / dx;
  std::vector<Conserved> out(N);
  for (int j = 0; j < N; ++j) {
    const Face& a = faces[j];
    const Face& b = faces[j + 1];
    Conserved U = grid.U[j] - lam * (b.F - a.F);
    U.q -= 0.5 * lam * (b.L + a.L) * (b.k - a.k);
    if (opts.source) U = U + dt * opts.source(grid.center(j), grid.t + 0.5 * dt);
    if (!(U.A > 0.0) || !std::isfinite(U.q) || !std::isfinite(U.r)) {
      std::ostringstream os;
      os << "non-positive area " << U.A << " in cell " << j << " (x = " << grid.center(j)
         << ", t = " << grid.t << ", dt = " << dt << ", previous A = " << grid.U[j].A
         << ", fluxes " << a.F.A << " / " << b.F.A << ")";
      throw SolverError(os.str(), j);
    }
    out[j] = U;
  }
  return out;
}

int limit_into(double alpha, const Slopes& dl, const Slopes& center, const Slopes& dr,
               Slopes* out) {
  *out = minmod_slope(alpha, dl, center, dr);
  return (out->A != center.A) + (out->u != center.u) + (out->v != center.v);
}

// Limits trial slopes of the freshly updated averages U in place.
template <class Trial>
int new_slopes(Grid1D& next, const BoundaryPolicy& bc, double alpha, Trial trial) {
  const Ghosts g = apply_boundaries(next, bc);
  const int N = next.size();
  const double inv = 1.0 / next.dx();
  std::vector<Primitive> W(N + 2);
  W[0] = to_primitive(g.left);
  W[N + 1] = to_primitive(g.right);
  for (int j = 0; j < N; ++j) W[j + 1] = to_primitive(next.U[j]);
  int clips = 0;
  for (int j = 0; j < N; ++j) {
    const Primitive& w = W[j + 1];
    clips += limit_into(alpha, diff(w, W[j], inv), trial(j, w, W[j], W[j + 2]),
                        diff(W[j + 2], w, inv), &next.slope[j]);
  }
  return clips;
}

// v is carried passively, so its face value is kept between the upwind
// cell average and that cell's reconstructed edge value.
double bounded_v(double v, double mass_flux, const Grid1D& g, const Ghosts& gh, int i,
                 const GrpInput& in) {
  const bool from_left = mass_flux >= 0.0;
  const Conserved& c = cell(g, gh, from_left ? i - 1 : i);
  const double vc = c.r / c.A;
  const double ve = from_left ? in.left.v : in.right.v;
  return std::clamp(v, std::min(vc, ve), std::max(vc, ve));
}

Conserved grp_flux(const Conserved& U, double v_half, double k, const ModelParams& P) {
  const auto f = flux(U, k, P);
  return {f[0], f[1], U.q * v_half};
}

}  // namespace

Grid1D::Grid1D(double x_min_, double x_max_, int cells, StiffnessProfile k_,
               ModelParams params_)
    : x_min(x_min_),
      x_max(x_max_),
      U(static_cast<std::size_t>(std::max(cells, 0)), Conserved{params_.area_eq(), 0.0, 0.0}),
      slope(U.size(), Slopes{}),
      k(std::move(k_)),
      params(params_) {
  validate();
}

void Grid1D::validate() const {
  if (U.empty()) throw std::invalid_argument("grid needs at least one cell");
  if (!(x_max > x_min)) throw std::invalid_argument("grid needs x_max > x_min");
  if (slope.size() != U.size()) throw std::invalid_argument("slope array size mismatch");
  for (std::size_t j = 0; j < U.size(); ++j) {
    if (!(U[j].A > 0.0)) throw std::invalid_argument("cell area must be positive");
    const Slopes& s = slope[j];
    if (!std::isfinite(s.A) || !std::isfinite(s.u) || !std::isfinite(s.v))
      throw std::invalid_argument("slopes must be finite");
  }
}

Ghosts apply_boundaries(const Grid1D& grid, const BoundaryPolicy& policy) {
  const int N = grid.size();
  const Slopes zero{};
  switch (policy.kind) {
    case BoundaryPolicy::Kind::Periodic:
      return {grid.U[N - 1], grid.slope[N - 1], grid.U[0], grid.slope[0]};
    case BoundaryPolicy::Kind::Dirichlet:
      return {policy.left, zero, policy.right, zero};
    case BoundaryPolicy::Kind::Outflow:
      break;
  }
  return {grid.U[0], zero, grid.U[N - 1], zero};
}

double cfl_dt(const Grid1D& grid, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  const double s = max_speed(grid);
  if (!std::isfinite(s) || !(s > 0.0)) throw std::domain_error("non-finite wave speed");
  return cfl * grid.dx() / s;
}

GrpInput reconstruct_interface(const Grid1D& grid, const Ghosts& ghosts, int i, int* guarded) {
  const double h = 0.5 * grid.dx();
  GrpInput in;
  in.left_slope = cell_slope(grid, ghosts, i - 1);
  in.right_slope = cell_slope(grid, ghosts, i);
  const Primitive wl = to_primitive(cell(grid, ghosts, i - 1));
  const Primitive wr = to_primitive(cell(grid, ghosts, i));
  in.left = wl + h * in.left_slope;
  in.right = wr + (-h) * in.right_slope;
  if (!(in.left.A > 0.0)) {
    in.left = wl;
    in.left_slope = {};
    if (guarded) ++*guarded;
  }
  if (!(in.right.A > 0.0)) {
    in.right = wr;
    in.right_slope = {};
    if (guarded) ++*guarded;
  }
  const double x = grid.face(i);
  in.k = grid.k.value(x);
  in.dk = grid.k.derivative(x);
  in.params = grid.params;
  return in;
}

double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

Slopes minmod_slope(double alpha, const Slopes& l, const Slopes& c, const Slopes& r) {
  return {minmod(alpha * l.A, c.A, alpha * r.A), minmod(alpha * l.u, c.u, alpha * r.u),
          minmod(alpha * l.v, c.v, alpha * r.v)};
}

StepReport step(Grid1D& grid, double dt, const StepOptions& opts) {
  check_dt(grid, dt);
  StepReport rep;
  rep.dt = dt;
  rep.max_speed = max_speed(grid);
  const ModelParams& P = grid.params;
  const Ghosts gh = apply_boundaries(grid, opts.boundary);

  const std::vector<Face> faces = all_faces(grid, opts.boundary, [&](int i) {
    const GrpInput in = reconstruct_interface(grid, gh, i, &rep.positivity_guards);
    const InterfaceRates r = grp_interface(in, opts.closure);
    ++rep.tags[static_cast<int>(r.tag)];
    const Primitive& w = r.star;
    const Conserved U0 = to_conserved(w);
    Conserved Ut{r.dA_dt, w.A * r.du_dt + w.u * r.dA_dt, w.A * r.dv_dt + w.v * r.dA_dt};
    // The extra source belongs in the Taylor expansion too; without it the
    // half-step state is off by O(dt) and the scheme drops to first order.
    if (opts.source) Ut = Ut + opts.source(grid.face(i), grid.t);
    const Conserved Uh = U0 + (0.5 * dt) * Ut;
    if (!(Uh.A > 0.0)) throw std::domain_error("half-step interface area is not positive");
    Face f;
    f.k = in.k;
    f.F = grp_flux(Uh, bounded_v(w.v + 0.5 * dt * r.dv_dt, Uh.q, grid, gh, i, in), in.k, P);
    f.L = coupling_coefficient(Uh.A, P);
    f.next = U0 + dt * Ut;
    return f;
  });

  Grid1D next = grid;
  next.U = update_cells(grid, faces, dt, opts);
  const double inv = 1.0 / grid.dx();
  rep.limiter_clips += new_slopes(next, opts.boundary, opts.alpha,
                                  [&](int j, const Primitive& w, const Primitive&, const Primitive&) {
                                    return primitive_slopes(w, inv * (faces[j + 1].next - faces[j].next));
                                  });
  grid.U = std::move(next.U);
  grid.slope = std::move(next.slope);
  grid.t += dt;
  return rep;
}

StepReport godunov_step(Grid1D& grid, double dt, const StepOptions& opts) {
  check_dt(grid, dt);
  StepReport rep;
  rep.dt = dt;
  rep.max_speed = max_speed(grid);
  const ModelParams& P = grid.params;
  const Ghosts gh = apply_boundaries(grid, opts.boundary);

  auto predict = [&](const Primitive& w, const Slopes& s, double k, double dk, double x) {
    const TimeRates r = one_sided_rates(w, s, k, dk, P);
    Conserved Ut = conserved_slopes(w, {r.dA_dt, r.du_dt, -w.u * s.v});
    if (opts.source) Ut = Ut + opts.source(x, grid.t);
    const Conserved U = to_conserved(w) + (0.5 * dt) * Ut;
    if (!(U.A > 0.0)) {
      ++rep.positivity_guards;
      return w;
    }
    return to_primitive(U);
  };

  const std::vector<Face> faces = all_faces(grid, opts.boundary, [&](int i) {
    const GrpInput in = reconstruct_interface(grid, gh, i, &rep.positivity_guards);
    const double x = grid.face(i);
    const Primitive l = predict(in.left, in.left_slope, in.k, in.dk, x);
    const Primitive r = predict(in.right, in.right_slope, in.k, in.dk, x);
    const Primitive w = sample(solve_star({l, r, in.k, P}), 0.0);
    const Conserved U = to_conserved(w);
    Face f;
    f.k = in.k;
    f.F = grp_flux(U, bounded_v(w.v, U.q, grid, gh, i, in), in.k, P);
    f.L = coupling_coefficient(w.A, P);
    return f;
  });

  Grid1D next = grid;
  next.U = update_cells(grid, faces, dt, opts);
  const double half = 0.5 / grid.dx();
  rep.limiter_clips += new_slopes(next, opts.boundary, opts.alpha,
                                  [&](int, const Primitive&, const Primitive& a, const Primitive& b) {
                                    return diff(b, a, half);
                                  });
  grid.U = std::move(next.U);
  grid.slope = std::move(next.slope);
  grid.t += dt;
  return rep;
}

void write_csv(const Grid1D& grid, std::ostream& os) {
  os << "x,A,u\n" << std::setprecision(17);
  for (int j = 0; j < grid.size(); ++j) {
    const Primitive w = to_primitive(grid.U[j]);
    os << grid.center(j) << ',' << w.A << ',' << w.u << '\n';
  }
}

}  // namespace hemogrp

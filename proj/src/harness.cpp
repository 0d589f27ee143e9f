#include "hemogrp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hemogrp {

Manufactured::Manufactured(ManufacturedParams p, ModelParams model)
    : p_(p), model_(model), kx_(2.0 * M_PI / p.L), wt_(2.0 * M_PI / p.T0) {
  if (!(p.L > 0.0) || !(p.T0 > 0.0) || !(p.A0 > std::abs(p.a0)) || !(p.K0 > std::abs(p.k0)))
    throw std::invalid_argument("manufactured fields need L, T0 > 0, A0 > |a0| and K0 > |k0|");
}

double Manufactured::area(double x, double t) const {
  return p_.A0 + p_.a0 * std::sin(kx_ * x) * std::cos(wt_ * t);
}

double Manufactured::flow(double x, double t) const {
  return p_.q0 - p_.a0 * p_.L / p_.T0 * std::cos(kx_ * x) * std::sin(wt_ * t);
}

StiffnessProfile Manufactured::stiffness() const {
  return StiffnessProfile::sinusoidal(p_.K0, p_.k0, p_.L);
}

Primitive Manufactured::state(double x, double t) const {
  const double A = area(x, t);
  return {A, flow(x, t) / A, 0.0};
}

Slopes Manufactured::slopes(double x, double t) const {
  const double A = area(x, t), q = flow(x, t);
  const double Ax = p_.a0 * kx_ * std::cos(kx_ * x) * std::cos(wt_ * t);
  const double qx = p_.a0 * p_.L / p_.T0 * kx_ * std::sin(kx_ * x) * std::sin(wt_ * t);
  return {Ax, (qx - q / A * Ax) / A, 0.0};
}

Conserved Manufactured::source(double x, double t) const {
  const double s = std::sin(kx_ * x), c = std::cos(kx_ * x);
  const double st = std::sin(wt_ * t), ct = std::cos(wt_ * t);
  const double A = area(x, t), q = flow(x, t);
  const double Ax = p_.a0 * kx_ * c * ct;
  const double qt = -p_.a0 * p_.L / p_.T0 * wt_ * c * ct;
  const double qx = p_.a0 * p_.L / p_.T0 * kx_ * s * st;
  const double k = p_.K0 + p_.k0 * s;
  const double dk = p_.k0 * kx_ * c;
  const double c2 = std::pow(wave_speed(A, k, model_), 2);
  // q_t + (q^2/A)_x + (A/rho) p_x, with p_x split into its A and k parts.
  const double B2 = qt + 2.0 * q * qx / A - q * q * Ax / (A * A) + c2 * Ax +
                    A / model_.rho() * (model_.alpha_pow(A) - 1.0) * dk;
  return {0.0, B2, 0.0};
}

const char* to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::Manufactured: return "analytic-manufactured";
    case ReferenceKind::ExactRiemann: return "exact-riemann";
    case ReferenceKind::FineGrid: return "fine-grid";
    case ReferenceKind::None: return "none";
  }
  return "?";
}

const char* to_string(Scheme scheme) { return scheme == Scheme::Grp ? "grp" : "godunov"; }

const char* to_string(NormKind kind) { return kind == NormKind::L1 ? "L1" : "Linf"; }

namespace {

CaseSpec riemann_1d(std::string name, std::string title, double x_max,
                    std::vector<double> breaks, std::vector<Primitive> states,
                    StiffnessProfile k, double t_end, int cells, ReferenceKind ref) {
  CaseSpec c;
  c.name = std::move(name);
  c.title = std::move(title);
  c.x_max = x_max;
  c.breaks = std::move(breaks);
  c.states = std::move(states);
  c.k = std::move(k);
  c.t_end = t_end;
  c.cells = cells;
  c.reference = ref;
  return c;
}

CaseSpec quadrants(std::string name, std::string title, std::array<Primitive, 4> q) {
  CaseSpec c;
  c.name = std::move(name);
  c.title = std::move(title);
  c.dimension = 2;
  c.quadrants = q;
  c.k = StiffnessProfile::constant(5.0);
  // The figures carry no time stamp; waves from the center reach the
  // boundary shortly after this.
  c.t_end = 0.2;
  c.cells = 400;
  return c;
}

std::vector<CaseSpec> build_registry() {
  std::vector<CaseSpec> r;

  CaseSpec m;
  m.name = "example1";
  m.title = "manufactured smooth solution";
  m.manufactured = ManufacturedParams{};
  m.k = Manufactured(*m.manufactured, m.params).stiffness();
  m.t_end = 0.025;
  m.cells = 51;
  m.boundary = BoundaryPolicy::Kind::Periodic;
  m.reference = ReferenceKind::Manufactured;
  r.push_back(m);

  r.push_back(riemann_1d("example2", "two rarefactions, constant stiffness", 10.0, {0.3},
                         {{3.5, 3.5, 0.0}, {2.5, 5.0, 0.0}}, StiffnessProfile::constant(10.0),
                         0.75, 200, ReferenceKind::ExactRiemann));
  r.push_back(riemann_1d("example3", "Riemann problem across a stiffness ramp", 4.0, {0.6},
                         {{1.2, 3.5, 0.0}, {1.5, 2.5, 0.0}}, StiffnessProfile::standard_ramp(),
                         0.6, 300, ReferenceKind::FineGrid));
  r.push_back(riemann_1d("example4", "shock meeting a stiffness ramp", 15.0, {0.6, 0.8},
                         {{2.0, 3.061, 0.0}, {1.5, 2.5, 0.0}, {1.3307492, 2.818, 0.0}},
                         StiffnessProfile::standard_ramp(), 1.5, 400, ReferenceKind::FineGrid));

  r.push_back(quadrants("example5", "four rarefactions",
                        {{{1.0, 0.0, 0.0}, {0.5179, -0.9316, 0.0}, {0.1492, -0.9316, -1.4045},
                          {0.356, 0.0, -1.4045}}}));
  r.push_back(quadrants("example6", "four rarefactions forming shocks",
                        {{{1.0, 0.0, 0.0}, {1.552, -0.7169, 0.0}, {1.0, -0.7169, -0.7169},
                          {1.552, 0.0, -0.7169}}}));
  r.push_back(quadrants("example7", "four shocks",
                        {{{1.0, 0.0, 0.0}, {1.5, 0.6655, 0.0}, {1.0, 0.6655, 0.6655},
                          {1.5, 0.0, 0.6655}}}));
  r.push_back(quadrants("example8", "four shocks with Mach stems",
                        {{{3.5, 0.0, 0.0}, {1.428, 1.7849, 0.0}, {0.46599, 1.7849, 1.7849},
                          {1.428, 0.0, 1.7849}}}));
  return r;
}

Primitive piecewise_state(const CaseSpec& spec, double x) {
  std::size_t i = 0;
  while (i < spec.breaks.size() && x >= spec.breaks[i]) ++i;
  return spec.states[i];
}

BoundaryPolicy boundary_of(const CaseSpec& spec) {
  return spec.boundary == BoundaryPolicy::Kind::Periodic ? BoundaryPolicy::periodic()
                                                         : BoundaryPolicy::outflow();
}

void add(RunLog& log, const std::array<int, kCaseTagCount>& tags, int guards, int clips) {
  ++log.steps;
  for (int n = 0; n < kCaseTagCount; ++n) log.tags[n] += tags[n];
  log.positivity_guards += guards;
  log.limiter_clips += clips;
}

double time_step(double t, double t_end, double dt) {
  // Avoid a sliver step at the end.
  return t + dt >= t_end * (1.0 - 1e-14) ? t_end - t : dt;
}

}  // namespace

const std::vector<CaseSpec>& case_registry() {
  static const std::vector<CaseSpec> registry = build_registry();
  return registry;
}

const CaseSpec& find_case(const std::string& name) {
  for (const CaseSpec& c : case_registry())
    if (c.name == name) return c;
  std::string known;
  for (const CaseSpec& c : case_registry()) known += (known.empty() ? "" : ", ") + c.name;
  throw std::invalid_argument("unknown case '" + name + "'; known cases: " + known);
}

Grid1D initial_grid(const CaseSpec& spec, int cells) {
  if (spec.dimension != 1) throw std::invalid_argument(spec.name + " is a 2D case");
  Grid1D g(spec.x_min, spec.x_max, cells, spec.k, spec.params);
  if (spec.manufactured) {
    const Manufactured mf(*spec.manufactured, spec.params);
    for (int j = 0; j < cells; ++j) {
      g.U[j] = to_conserved(mf.state(g.center(j), 0.0));
      g.slope[j] = mf.slopes(g.center(j), 0.0);
    }
  } else {
    for (int j = 0; j < cells; ++j) g.U[j] = to_conserved(piecewise_state(spec, g.center(j)));
  }
  return g;
}

Grid2D initial_grid_2d(const CaseSpec& spec, int nx, int ny) {
  if (spec.dimension != 2) throw std::invalid_argument(spec.name + " is a 1D case");
  Grid2D g(nx, ny, spec.x_min, spec.x_max, spec.y_min, spec.y_max, spec.k, spec.params);
  four_quadrant_init(g, spec.quadrants, spec.x0, spec.y0);
  return g;
}

StepOptions step_options(const CaseSpec& spec, double alpha) {
  StepOptions o;
  o.alpha = alpha;
  o.boundary = boundary_of(spec);
  if (spec.manufactured) {
    const Manufactured mf(*spec.manufactured, spec.params);
    o.source = [mf](double x, double t) { return mf.source(x, t); };
  }
  return o;
}

RunLog advance(Grid1D& grid, const CaseSpec& spec, double t_end, double cfl, double alpha,
               Scheme scheme) {
  const StepOptions opts = step_options(spec, alpha);
  RunLog log;
  while (grid.t < t_end) {
    const double dt = time_step(grid.t, t_end, cfl_dt(grid, cfl));
    const double target = grid.t + dt;
    const StepReport r = scheme == Scheme::Grp ? step(grid, dt, opts) : godunov_step(grid, dt, opts);
    if (target >= t_end * (1.0 - 1e-14)) grid.t = t_end;
    add(log, r.tags, r.positivity_guards, r.limiter_clips);
  }
  return log;
}

RunLog advance(Grid2D& grid, const CaseSpec& spec, double t_end, double cfl, double alpha,
               SplitOrder order) {
  const StepOptions opts = step_options(spec, alpha);
  RunLog log;
  while (grid.t < t_end) {
    const double dt = time_step(grid.t, t_end, cfl_dt(grid, cfl));
    const double target = grid.t + dt;
    const SweepReport r = strang_step(grid, dt, opts, order);
    if (target >= t_end * (1.0 - 1e-14)) grid.t = t_end;
    add(log, r.tags, r.positivity_guards, r.limiter_clips);
  }
  return log;
}

Reference point_reference(double x_min, double x_max, std::function<double(double)> area) {
  return {x_min, x_max, [f = std::move(area)](double lo, double hi) { return f(0.5 * (lo + hi)); }};
}

Reference fine_grid_reference(const Grid1D& fine) {
  std::vector<double> A(fine.size());
  for (int j = 0; j < fine.size(); ++j) A[j] = fine.U[j].A;
  const double x0 = fine.x_min, h = fine.dx();
  const int n = fine.size();
  return {fine.x_min, fine.x_max, [A = std::move(A), x0, h, n](double lo, double hi) {
            // Overlap-weighted average of the fine cells covering [lo, hi].
            const int first = std::clamp(static_cast<int>(std::floor((lo - x0) / h)), 0, n - 1);
            const int last = std::clamp(static_cast<int>(std::ceil((hi - x0) / h)), 1, n);
            double sum = 0.0;
            for (int j = first; j < last; ++j) {
              const double a = std::max(lo, x0 + j * h), b = std::min(hi, x0 + (j + 1) * h);
              if (b > a) sum += A[j] * (b - a);
            }
            return sum / (hi - lo);
          }};
}

Reference case_reference(const CaseSpec& spec, double t, int fine_cells, double alpha) {
  switch (spec.reference) {
    case ReferenceKind::Manufactured: {
      const Manufactured mf(*spec.manufactured, spec.params);
      return point_reference(spec.x_min, spec.x_max, [mf, t](double x) { return mf.area(x, t); });
    }
    case ReferenceKind::ExactRiemann: {
      const StarSolution star = solve_star({spec.states[0], spec.states[1], spec.k.value(0.0),
                                            spec.params});
      const double x0 = spec.breaks[0];
      return point_reference(spec.x_min, spec.x_max, [star, x0, t](double x) {
        return t > 0.0 ? sample(star, (x - x0) / t).A : (x < x0 ? star.left.A : star.right.A);
      });
    }
    case ReferenceKind::FineGrid: {
      Grid1D fine = initial_grid(spec, fine_cells);
      advance(fine, spec, t, 0.5, alpha, Scheme::Grp);
      return fine_grid_reference(fine);
    }
    case ReferenceKind::None: break;
  }
  throw std::invalid_argument(spec.name + " has no reference solution");
}

ErrorReport error_norm(const Grid1D& grid, const Reference& ref, NormKind kind) {
  const double tol = 1e-12 * (std::abs(ref.x_min) + std::abs(ref.x_max) + 1.0);
  if (std::abs(grid.x_min - ref.x_min) > tol || std::abs(grid.x_max - ref.x_max) > tol)
    throw std::invalid_argument("reference domain does not match the grid");
  ErrorReport e;
  e.norm = kind;
  e.cells = grid.size();
  const double h = grid.dx();
  for (int j = 0; j < grid.size(); ++j) {
    const double d = std::abs(grid.U[j].A - ref.area(grid.face(j), grid.face(j + 1)));
    e.value = kind == NormKind::L1 ? e.value + d * h : std::max(e.value, d);
  }
  return e;
}

std::vector<ConvergenceRow> convergence_study(const CaseSpec& spec, const StudyOptions& opts) {
  if (spec.dimension != 1 || spec.reference == ReferenceKind::None)
    throw std::invalid_argument(spec.name + " has no reference for a convergence study");
  std::vector<ConvergenceRow> rows;
  const bool halving = opts.mode == StudyMode::TimeHalving;
  const int levels = halving ? opts.levels : static_cast<int>(opts.meshes.size());
  if (levels < 1) throw std::invalid_argument("convergence study needs at least one level");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::optional<Reference> ref;  // reused while the final time is unchanged
  double ref_t = nan;
  for (int l = 0; l < levels; ++l) {
    const int cells = halving ? opts.cells : opts.meshes[l];
    const double t = halving ? opts.t0 / std::pow(2.0, l) : opts.t0;
    Grid1D g = initial_grid(spec, cells);
    advance(g, spec, t, opts.cfl, opts.alpha, opts.scheme);
    ConvergenceRow row;
    row.level = l;
    row.param = halving ? t : cells;
    if (!ref || t != ref_t) {
      ref = case_reference(spec, t, 8000, opts.alpha);
      ref_t = t;
    }
    row.error = error_norm(g, *ref, opts.norm).value;
    row.order = nan;
    if (l > 0) {
      const ConvergenceRow& prev = rows.back();
      const double ratio = halving ? 2.0 : row.param / prev.param;
      // Errors at round-off level carry no order information.
      if (prev.error > 1e-13 && row.error > 1e-13)
        row.order = std::log(prev.error / row.error) / std::log(ratio);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_csv(const std::vector<ConvergenceRow>& rows, std::ostream& os) {
  os << "level,param,error,order\n" << std::setprecision(17);
  for (const ConvergenceRow& r : rows)
    os << r.level << ',' << r.param << ',' << r.error << ',' << r.order << '\n';
}

void RunConfig::validate() const {
  if (cells != 0 && cells < 4) throw std::invalid_argument("cells must be at least 4");
  if ((nx != 0 && nx < 4) || (ny != 0 && ny < 4))
    throw std::invalid_argument("nx and ny must be at least 4");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (!(alpha >= 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in [0, 2)");
  if (t_end && !(*t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
}

std::string output_dir(const RunConfig& config) {
  if (!config.output.empty()) return config.output;
  const char* env = std::getenv("HEMOGRP_OUT");
  return env && *env ? env : "out";
}

namespace {

std::string write_file(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  body(os);
  if (!os) throw std::runtime_error("write failed: " + path.string());
  return path.string();
}

void write_log(const RunLog& log, std::ostream& os) {
  os << "steps " << log.steps << '\n';
  for (int n = 0; n < kCaseTagCount; ++n)
    os << "interfaces " << to_string(static_cast<CaseTag>(n)) << ' ' << log.tags[n] << '\n';
  os << "positivity_guards " << log.positivity_guards << '\n';
  os << "limiter_clips " << log.limiter_clips << '\n';
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  const CaseSpec& spec = find_case(config.case_name);
  const double t_end = config.t_end.value_or(spec.t_end);
  const std::filesystem::path dir = output_dir(config);
  std::filesystem::create_directories(dir);
  RunResult res;

  if (spec.dimension == 2) {
    if (config.scheme != Scheme::Grp) throw std::invalid_argument("2D runs use the GRP scheme");
    const int nx = config.nx ? config.nx : (config.cells ? config.cells : spec.cells);
    const int ny = config.ny ? config.ny : nx;
    Grid2D g = initial_grid_2d(spec, nx, ny);
    res.stats = advance(g, spec, t_end, config.cfl, config.alpha);
    const std::string stem = spec.name + "_grp_" + std::to_string(nx) + "x" + std::to_string(ny);
    res.snapshot = write_file(dir / (stem + ".csv"), [&](std::ostream& os) { write_csv(g, os); });
    res.log = write_file(dir / (stem + "_log.txt"), [&](std::ostream& os) { write_log(res.stats, os); });
    return res;
  }

  const int cells = config.cells ? config.cells : spec.cells;
  Grid1D g = initial_grid(spec, cells);
  const auto start = std::chrono::steady_clock::now();
  res.stats = advance(g, spec, t_end, config.cfl, config.alpha, config.scheme);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string stem = spec.name + "_" + to_string(config.scheme) + "_" + std::to_string(cells);
  res.snapshot = write_file(dir / (stem + ".csv"), [&](std::ostream& os) { write_csv(g, os); });
  res.log = write_file(dir / (stem + "_log.txt"), [&](std::ostream& os) { write_log(res.stats, os); });
  if (spec.reference != ReferenceKind::None) {
    const Reference ref = case_reference(spec, t_end, 8000, config.alpha);
    for (NormKind kind : {NormKind::L1, NormKind::Linf}) {
      ErrorReport e = error_norm(g, ref, kind);
      e.scheme = config.scheme;
      e.case_name = spec.name;
      e.runtime_s = secs;
      (kind == NormKind::L1 ? res.l1 : res.linf) = e;
    }
    res.errors = write_file(dir / (stem + "_errors.csv"), [&](std::ostream& os) {
      os << "case,scheme,cells,norm,value,runtime_s\n" << std::setprecision(17);
      for (const ErrorReport* e : {&*res.l1, &*res.linf})
        os << e->case_name << ',' << to_string(e->scheme) << ',' << e->cells << ','
           << to_string(e->norm) << ',' << e->value << ',' << e->runtime_s << '\n';
    });
  }
  return res;
}

}  // namespace hemogrp

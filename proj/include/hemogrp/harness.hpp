#pragma once

// Test cases, reference solutions, error norms and convergence tables.

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hemogrp/solver1d.hpp"
#include "hemogrp/solver2d.hpp"

namespace hemogrp {

/// Closed-form fields for the convergence study:
///   A(x,t) = A0 + a0 sin(2 pi x / L) cos(2 pi t / T0)
///   q(x,t) = q0 - (a0 L / T0) cos(2 pi x / L) sin(2 pi t / T0)
///   k(x)   = K0 + k0 sin(2 pi x / L)
/// They solve the model only with an extra source, returned by source().
struct ManufacturedParams {
  double K0 = 6.0;
  double k0 = 1.2;
  double A0 = 1.0;
  double a0 = 0.2;
  double L = 1.0;
  double T0 = 3.0;
  double q0 = 0.0;
};

class Manufactured {
 public:
  Manufactured(ManufacturedParams p, ModelParams model);

  const ManufacturedParams& params() const { return p_; }
  double area(double x, double t) const;
  double flow(double x, double t) const;
  StiffnessProfile stiffness() const;
  /// Primitive state and its exact x-derivatives.
  Primitive state(double x, double t) const;
  Slopes slopes(double x, double t) const;
  /// (B1, B2, 0). B1 vanishes identically for these fields.
  Conserved source(double x, double t) const;

 private:
  ManufacturedParams p_;
  ModelParams model_;
  double kx_, wt_;  // 2 pi / L, 2 pi / T0
};

enum class ReferenceKind { Manufactured, ExactRiemann, FineGrid, None };
const char* to_string(ReferenceKind kind);

enum class Scheme { Grp, Godunov };
const char* to_string(Scheme scheme);

struct CaseSpec {
  std::string name;
  std::string title;
  int dimension = 1;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  // 1D piecewise data: states[i] holds on [breaks[i-1], breaks[i]).
  std::vector<double> breaks;
  std::vector<Primitive> states;
  // 2D quadrant data, counter-clockwise from x > x0, y > y0.
  std::array<Primitive, 4> quadrants{};
  double x0 = 0.5, y0 = 0.5;
  std::optional<ManufacturedParams> manufactured;
  StiffnessProfile k = StiffnessProfile::constant(1.0);
  ModelParams params;
  double t_end = 0.0;
  int cells = 100;
  BoundaryPolicy::Kind boundary = BoundaryPolicy::Kind::Outflow;
  ReferenceKind reference = ReferenceKind::None;
};

/// Examples 1 to 8 in order.
const std::vector<CaseSpec>& case_registry();
/// Throws std::invalid_argument listing the known names.
const CaseSpec& find_case(const std::string& name);

/// Initial grid for a 1D case (cell-center values; exact slopes for the
/// manufactured case, zero otherwise).
Grid1D initial_grid(const CaseSpec& spec, int cells);
Grid2D initial_grid_2d(const CaseSpec& spec, int nx, int ny);
StepOptions step_options(const CaseSpec& spec, double alpha);

struct RunLog {
  int steps = 0;
  std::array<long, kCaseTagCount> tags{};
  long positivity_guards = 0;
  long limiter_clips = 0;
};

/// Marches a 1D case to t_end at the given CFL number. The last step is
/// shortened to land on t_end.
RunLog advance(Grid1D& grid, const CaseSpec& spec, double t_end, double cfl, double alpha,
               Scheme scheme);
RunLog advance(Grid2D& grid, const CaseSpec& spec, double t_end, double cfl, double alpha,
               SplitOrder order = SplitOrder::XYX);

/// Reference area over a cell [lo, hi]. Point references evaluate at the
/// midpoint, fine-grid references average over the cell.
struct Reference {
  double x_min = 0.0, x_max = 1.0;
  std::function<double(double lo, double hi)> area;
};

Reference point_reference(double x_min, double x_max, std::function<double(double)> area);
/// Cell-average restriction of a finer solution.
Reference fine_grid_reference(const Grid1D& fine);
/// Reference for a 1D case at time t. Fine-grid references are computed
/// with the GRP scheme on `fine_cells` cells.
Reference case_reference(const CaseSpec& spec, double t, int fine_cells = 8000,
                         double alpha = 1.9);

enum class NormKind { L1, Linf };
const char* to_string(NormKind kind);

struct ErrorReport {
  NormKind norm = NormKind::L1;
  double value = 0.0;
  int cells = 0;
  Scheme scheme = Scheme::Grp;
  std::string case_name;
  double runtime_s = 0.0;
};

/// L1 = sum |A_j - A_ref| dx, Linf = max |A_j - A_ref|. Throws
/// std::invalid_argument if the domains differ.
ErrorReport error_norm(const Grid1D& grid, const Reference& ref, NormKind kind);

enum class StudyMode { TimeHalving, MeshDoubling };

struct ConvergenceRow {
  int level = 0;
  double param = 0.0;  // final time or cell count
  double error = 0.0;
  double order = 0.0;  // NaN on the first row and when errors vanish
};

struct StudyOptions {
  StudyMode mode = StudyMode::TimeHalving;
  NormKind norm = NormKind::Linf;
  double t0 = 0.1;              // time halving: t0, t0/2, ...; mesh doubling: fixed time
  int cells = 51;               // time halving
  std::vector<int> meshes{50, 100, 200, 400};
  int levels = 4;               // time halving
  double cfl = 0.5;
  double alpha = 1.9;
  Scheme scheme = Scheme::Grp;
};

/// The case must carry a reference solution.
std::vector<ConvergenceRow> convergence_study(const CaseSpec& spec, const StudyOptions& opts);
/// Header `level,param,error,order`.
void write_csv(const std::vector<ConvergenceRow>& rows, std::ostream& os);

struct RunConfig {
  std::string case_name;
  Scheme scheme = Scheme::Grp;
  int cells = 0;  // 0: case default
  int nx = 0, ny = 0;
  double cfl = 0.5;
  std::optional<double> t_end;
  std::string output;  // directory; empty: $HEMOGRP_OUT or ./out
  double alpha = 1.9;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct RunResult {
  std::string snapshot;  // paths of the written files
  std::string errors;    // empty if the case has no reference
  std::string log;
  std::optional<ErrorReport> l1, linf;
  RunLog stats;
};

/// Runs a case and writes <case>_<scheme>_<cells>.csv, ..._errors.csv and
/// ..._log.txt into the output directory. Solver failures propagate.
RunResult run(const RunConfig& config);

std::string output_dir(const RunConfig& config);

}  // namespace hemogrp

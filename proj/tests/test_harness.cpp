#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hemogrp/harness.hpp"

using namespace hemogrp;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Sixth-order central difference.
template <class F>
double d6(F f, double x, double h) {
  return (45.0 * (f(x + h) - f(x - h)) - 9.0 * (f(x + 2 * h) - f(x - 2 * h)) +
          (f(x + 3 * h) - f(x - 3 * h))) /
         (60.0 * h);
}

}  // namespace

TEST_CASE("registry holds the eight cases with their data") {
  const auto& r = case_registry();
  REQUIRE(r.size() == 8);
  const CaseSpec& e2 = find_case("example2");
  CHECK(e2.states[0].A == 3.5);
  CHECK(e2.states[0].u == 3.5);
  CHECK(e2.k.value(5.0) == 10.0);
  CHECK(e2.t_end == 0.75);
  CHECK(e2.reference == ReferenceKind::ExactRiemann);
  const CaseSpec& e4 = find_case("example4");
  CHECK(e4.states[1].A == 1.5);
  CHECK(e4.states[1].u == 2.5);
  CHECK(e4.breaks == std::vector<double>{0.6, 0.8});
  CHECK(e4.t_end == 1.5);
  CHECK(find_case("example3").t_end == 0.6);
  CHECK(find_case("example3").reference == ReferenceKind::FineGrid);
  const CaseSpec& e6 = find_case("example6");
  CHECK(e6.quadrants[1].A == 1.552);
  CHECK(e6.quadrants[1].u == -0.7169);
  CHECK(e6.quadrants[1].v == 0.0);
  CHECK(e6.k.value(0.3) == 5.0);
  for (const CaseSpec& c : r) {
    CHECK(c.t_end > 0.0);
    CHECK((c.dimension == 2 || c.reference != ReferenceKind::None));
  }
  try {
    find_case("nope");
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("example8") != std::string::npos);
  }
}

TEST_CASE("initial grids sample the piecewise data") {
  const Grid1D g = initial_grid(find_case("example4"), 150);  // dx = 0.1
  CHECK(to_primitive(g.U[5]).A == 2.0);
  CHECK(to_primitive(g.U[6]).A == 1.5);
  CHECK(to_primitive(g.U[7]).A == 1.5);
  CHECK(to_primitive(g.U[8]).A == 1.3307492);
  CHECK_THROWS_AS(initial_grid(find_case("example5"), 10), std::invalid_argument);
  const Grid2D q = initial_grid_2d(find_case("example8"), 8, 8);
  CHECK(q.at(7, 7).A == 3.5);
  CHECK(to_primitive(q.at(0, 0)).v == doctest::Approx(1.7849));
}

TEST_CASE("manufactured fields at t = 0") {
  const Manufactured mf({}, ModelParams{});
  for (double x : {0.0, 0.1, 0.37, 0.9}) {
    CHECK(mf.area(x, 0.0) == doctest::Approx(1.0 + 0.2 * std::sin(2 * M_PI * x)).epsilon(1e-15));
    CHECK(mf.flow(x, 0.0) == 0.0);
  }
  CHECK(mf.stiffness().value(0.25) == doctest::Approx(7.2));
}

TEST_CASE("manufactured source equals the residual of the fields") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(0.0, 1.0), ut(0.0, 3.0);
  for (double K0 : {6.0, 60.0, 300.0, 600.0}) {
    ManufacturedParams p;
    p.K0 = K0;
    const ModelParams P;
    const Manufactured mf(p, P);
    const StiffnessProfile k = mf.stiffness();
    double worst1 = 0.0, worst2 = 0.0;
    for (int n = 0; n < 100; ++n) {
      const double x = ux(rng), t = ut(rng), h = 1e-3;
      // A_t + q_x and q_t + (q^2/A + Pbar)_x + L22 k_x, built only from the
      // flux and coupling of the model.
      auto F = [&](double y) { return flux({mf.area(y, t), mf.flow(y, t), 0.0}, k.value(y), P); };
      const double At = d6([&](double s) { return mf.area(x, s); }, t, h);
      const double qt = d6([&](double s) { return mf.flow(x, s); }, t, h);
      const double F0x = d6([&](double y) { return F(y)[0]; }, x, h);
      const double F1x = d6([&](double y) { return F(y)[1]; }, x, h);
      const double kx = d6([&](double y) { return k.value(y); }, x, h);
      const double r1 = At + F0x;
      const double r2 = qt + F1x + coupling_coefficient(mf.area(x, t), P) * kx;
      const Conserved B = mf.source(x, t);
      worst1 = std::max(worst1, std::abs(B.A - r1));
      worst2 = std::max(worst2, std::abs(B.q - r2));
    }
    INFO("K0 = " << K0);
    CHECK(worst1 <= 1e-7);
    CHECK(worst2 <= 1e-7);
  }
}

TEST_CASE("error norms") {
  Grid1D g(0.0, 2.0, 8, StiffnessProfile::constant(5.0), ModelParams{});
  for (int j = 0; j < 8; ++j) g.U[j].A = 1.0 + g.center(j);
  const Reference exact = point_reference(0.0, 2.0, [](double x) { return 1.0 + x; });
  CHECK(error_norm(g, exact, NormKind::L1).value == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(error_norm(g, exact, NormKind::Linf).value <= 1e-15);
  const Reference off = point_reference(0.0, 2.0, [](double x) { return 1.0 + x + 0.01; });
  CHECK(error_norm(g, off, NormKind::Linf).value == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(error_norm(g, off, NormKind::L1).value == doctest::Approx(0.02).epsilon(1e-12));
  CHECK_THROWS_AS(error_norm(g, point_reference(0.0, 1.0, [](double) { return 1.0; }), NormKind::L1),
                  std::invalid_argument);
}

TEST_CASE("fine-grid restriction averages over overlapping cells") {
  Grid1D fine(0.0, 1.0, 10, StiffnessProfile::constant(5.0), ModelParams{});
  for (int j = 0; j < 10; ++j) fine.U[j].A = 1.0 + j;
  const Reference r = fine_grid_reference(fine);
  CHECK(r.area(0.0, 0.2) == doctest::Approx(1.5));
  CHECK(r.area(0.0, 1.0) == doctest::Approx(5.5));
  // [0.05, 0.25]: half of cell 0, cell 1, half of cell 2.
  CHECK(r.area(0.05, 0.25) == doctest::Approx((0.5 * 1 + 2 + 0.5 * 3) / 2.0));
}

TEST_CASE("exact Riemann reference keeps the fan invariant constant") {
  const CaseSpec& e2 = find_case("example2");
  const Reference ref = case_reference(e2, 0.75);
  const StarSolution s = solve_star({e2.states[0], e2.states[1], 10.0, e2.params});
  // Inside the left fan psi = u + (2/m) c equals its left-state value.
  const double psi_l = e2.states[0].u + 4.0 * s.c_left;
  for (double xi : {0.6, 1.0, 1.5, 2.0}) {
    const Primitive w = sample(s, xi);
    CHECK(w.u + 4.0 * wave_speed(w.A, 10.0, e2.params) == doctest::Approx(psi_l).epsilon(1e-12));
  }
  CHECK(ref.area(0.0, 0.2) == 3.5);
  CHECK(ref.area(4.0, 4.1) == doctest::Approx(s.A_star).epsilon(1e-14));
}

TEST_CASE("convergence tables") {
  CaseSpec e1 = find_case("example1");
  StudyOptions o;
  o.mode = StudyMode::MeshDoubling;
  o.meshes = {100, 200, 400};
  o.t0 = 0.05;
  const auto rows = convergence_study(e1, o);
  REQUIRE(rows.size() == 3);
  CHECK(std::isnan(rows[0].order));
  CHECK(rows[1].param == 200);
  CHECK(rows[2].order > 1.8);

  // A uniform state at rest is reproduced exactly: orders are flagged.
  CaseSpec still = find_case("example2");
  still.states = {{2.0, 0.0, 0.0}, {2.0, 0.0, 0.0}};
  o.mode = StudyMode::TimeHalving;
  o.cells = 20;
  o.levels = 3;
  const auto flat = convergence_study(still, o);
  for (const auto& r : flat) {
    CHECK(r.error <= 1e-14);
    CHECK(std::isnan(r.order));
  }
  std::ostringstream os;
  write_csv(flat, os);
  CHECK(os.str().rfind("level,param,error,order\n0,0.050000000000000003,", 0) == 0);
  CHECK(os.str().find(",nan\n") != std::string::npos);
  CHECK_THROWS_AS(convergence_study(find_case("example5"), o), std::invalid_argument);
}

TEST_CASE("run configuration checks") {
  RunConfig c;
  c.case_name = "example2";
  CHECK_NOTHROW(c.validate());
  c.cells = 3;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.cells = 4;
  c.cfl = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.cfl = 1.0;
  CHECK_NOTHROW(c.validate());
  c.cfl = 1.01;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("runs are deterministic and report errors") {
  const auto dir = std::filesystem::temp_directory_path() / "hemogrp_test_run";
  std::filesystem::remove_all(dir);
  RunConfig c;
  c.case_name = "example2";
  c.cells = 100;
  c.output = (dir / "a").string();
  const RunResult a = run(c);
  c.output = (dir / "b").string();
  const RunResult b = run(c);
  CHECK(slurp(a.snapshot) == slurp(b.snapshot));
  CHECK(slurp(a.log) == slurp(b.log));
  CHECK(slurp(a.snapshot).rfind("x,A,u\n", 0) == 0);
  REQUIRE(a.l1);
  CHECK(a.l1->value > 0.0);
  CHECK(a.l1->value < 0.1);
  CHECK(a.linf->value >= a.l1->value / 10.0);

  c.case_name = "example5";
  c.cells = 0;
  c.nx = 12;
  c.ny = 10;
  const RunResult q = run(c);
  CHECK(q.snapshot.find("example5_grp_12x10.csv") != std::string::npos);
  CHECK(!q.l1);
  c.case_name = "missing";
  CHECK_THROWS_AS(run(c), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

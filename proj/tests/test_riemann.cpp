#include <doctest.h>

#include <cmath>
#include <random>

#include "hemogrp/riemann.hpp"

using namespace hemogrp;

namespace {
const ModelParams kParams{1.05, 1.0, 0.5};

// Independent wave curves written from scratch for m = 1/2, Ae = 1:
// c = sqrt(k sqrt(A) / (2 rho)), pbar = k A^{3/2} / (3 rho).
double oracle_c(double A, double k) { return std::sqrt(k * std::sqrt(A) / (2.0 * 1.05)); }

double oracle_curve(double A, double As, double us, double k, double sign) {
  if (A <= As) return us + sign * 4.0 * (oracle_c(A, k) - oracle_c(As, k));
  const double pa = k * std::pow(A, 1.5) / (3.0 * 1.05);
  const double pb = k * std::pow(As, 1.5) / (3.0 * 1.05);
  return us + sign * std::sqrt((A - As) * (pa - pb) / (A * As));
}

double oracle_star(const Primitive& L, const Primitive& R, double k) {
  auto f = [&](double A) {
    return oracle_curve(A, L.A, L.u, k, -1.0) - oracle_curve(A, R.A, R.u, k, 1.0);
  };
  double lo = 1e-14, hi = 100.0;
  while (f(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Primitive mirror(const Primitive& w) { return {w.A, -w.u, w.v}; }
}  // namespace

TEST_CASE("phi_jump") {
  CHECK(phi_jump(1.0, 1.0, 10.0, kParams) == 0.0);
  CHECK(phi_jump(2.0, 1.0, 10.0, kParams) == doctest::Approx(1.70360).epsilon(1e-5));
  CHECK_THROWS_AS(phi_jump(0.0, 1.0, 10.0, kParams), std::domain_error);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> area(1e-3, 1e3);
  bool all_finite = true;
  for (int i = 0; i < 10000; ++i) {
    const double v = phi_jump(area(gen), area(gen), 10.0, kParams);
    all_finite = all_finite && std::isfinite(v) && v >= 0.0;
  }
  CHECK(all_finite);
}

TEST_CASE("phi_jump derivatives against central differences") {
  const double h = 1e-6, k = 10.0;
  const PhiDerivatives d = phi_jump_derivatives(2.0, 1.0, k, kParams);
  const double fdA = (phi_jump(2.0 + h, 1.0, k, kParams) - phi_jump(2.0 - h, 1.0, k, kParams)) / (2 * h);
  const double fdB = (phi_jump(2.0, 1.0 + h, k, kParams) - phi_jump(2.0, 1.0 - h, k, kParams)) / (2 * h);
  CHECK(std::abs(d.dA - fdA) <= 1e-6 * std::abs(d.dA));
  CHECK(std::abs(d.dAbar - fdB) <= 1e-6 * std::abs(d.dAbar));
  CHECK(d.dk * 2.0 * k / phi_jump(2.0, 1.0, k, kParams) == doctest::Approx(1.0).epsilon(1e-12));
  // Also below the reference state.
  const PhiDerivatives e = phi_jump_derivatives(0.6, 1.4, k, kParams);
  const double fe = (phi_jump(0.6 + h, 1.4, k, kParams) - phi_jump(0.6 - h, 1.4, k, kParams)) / (2 * h);
  CHECK(std::abs(e.dA - fe) <= 1e-6 * std::abs(e.dA));
  CHECK_THROWS_AS(phi_jump_derivatives(1.0, 1.0 + 1e-12, k, kParams), AcousticStrengthError);
}

TEST_CASE("shock speed") {
  CHECK(shock_speed({2.0, 1.0, 0.0}, {1.0, 0.0, 0.0}) == 2.0);
  const double Phi = phi_jump(2.0, 1.0, 10.0, kParams);
  const double s = shock_speed({2.0, Phi, 0.0}, {1.0, 0.0, 0.0});
  CHECK(s == doctest::Approx(3.40720).epsilon(1e-5));
  CHECK(s > wave_speed(1.0, 10.0, kParams));
  CHECK(shock_speed({2.0, 1.3, 0.0}, {1.0, 0.3, 0.0}) == doctest::Approx(2.3).epsilon(1e-15));
  CHECK_THROWS_AS(shock_speed({1.0, 1.0, 0.0}, {1.0, 0.0, 0.0}), AcousticStrengthError);
}

TEST_CASE("identical states") {
  const Primitive w{1.3, 0.4, 0.0};
  const StarSolution s = solve_star({w, w, 10.0, kParams});
  CHECK(s.A_star == w.A);
  CHECK(s.u_star == w.u);
  CHECK(s.left_wave.kind == WaveKind::Trivial);
  CHECK(s.right_wave.kind == WaveKind::Trivial);
}

TEST_CASE("example 2 star state: two rarefactions") {
  const Primitive L{3.5, 3.5, 0.0}, R{2.5, 5.0, 0.0};
  const StarSolution s = solve_star({L, R, 10.0, kParams});
  CHECK(s.left_wave.kind == WaveKind::Rarefaction);
  CHECK(s.right_wave.kind == WaveKind::Rarefaction);
  const double psiL = L.u + 4.0 * oracle_c(L.A, 10.0);
  const double phiR = R.u - 4.0 * oracle_c(R.A, 10.0);
  const double u = 0.5 * (psiL + phiR);
  const double c = (psiL - phiR) / 8.0;
  CHECK(std::abs(s.u_star - u) < 1e-10);
  CHECK(std::abs(s.c_star - c) < 1e-10);
  // Quoted value carries the rounding of c_L; 4.731601... is exact.
  CHECK(s.u_star == doctest::Approx(4.73174).epsilon(5e-5));
  CHECK(s.A_star == doctest::Approx(2.26428).epsilon(1e-5));
  CHECK(std::abs(s.A_star - oracle_star(L, R, 10.0)) < 1e-10);

  // The whole pattern moves right: sampling the axis gives the left state.
  const Primitive at0 = sample(s, 0.0);
  CHECK(at0.A == L.A);
  CHECK(at0.u == L.u);
  CHECK(L.u - s.c_left == doctest::Approx(0.515).epsilon(1e-3));

  const Primitive in_fan = sample(s, 1.0);
  CHECK(in_fan.u - 1.0 == doctest::Approx((psiL - 1.0) / 5.0).epsilon(1e-13));
  CHECK(in_fan.u - 1.0 == doctest::Approx(2.88782).epsilon(1e-5));
  CHECK(sample(s, -1e9).A == L.A);
  CHECK(sample(s, 1e9).A == R.A);
}

TEST_CASE("fan invariants are constant") {
  const Primitive L{3.5, 3.5, 0.0}, R{2.5, 5.0, 0.0};
  const StarSolution s = solve_star({L, R, 10.0, kParams});
  const double psiL = s.psi_left(), phiR = s.phi_right();
  for (int i = 1; i <= 21; ++i) {
    const double xl = s.left_wave.head + (s.left_wave.tail - s.left_wave.head) * i / 22.0;
    const InvariantPair a = invariants(sample(s, xl), 10.0, kParams);
    CHECK(std::abs(a.psi - psiL) <= 1e-11 * std::abs(psiL));
    const double xr = s.right_wave.tail + (s.right_wave.head - s.right_wave.tail) * i / 22.0;
    const InvariantPair b = invariants(sample(s, xr), 10.0, kParams);
    CHECK(std::abs(b.phi - phiR) <= 1e-11 * std::abs(phiR));
  }
}

TEST_CASE("symmetric compression") {
  const Primitive L{1.0, 1.0, 0.0}, R{1.0, -1.0, 0.0};
  const StarSolution s = solve_star({L, R, 10.0, kParams});
  CHECK(std::abs(s.u_star) < 1e-14);
  CHECK(s.A_star > 1.0);
  CHECK(std::abs(s.A_star - oracle_star(L, R, 10.0)) < 1e-12);
  CHECK(s.left_wave.kind == WaveKind::Shock);
  CHECK(s.right_wave.kind == WaveKind::Shock);
  CHECK(s.left_wave.head == doctest::Approx(-s.right_wave.head).epsilon(1e-13));
}

TEST_CASE("vacuum is reported") {
  const Primitive L{1.0, -10.0, 0.0}, R{1.0, 10.0, 0.0};
  CHECK_THROWS_AS(solve_star({L, R, 10.0, kParams}), VacuumError);
}

TEST_CASE("random inputs: oracle, mirror, Galilean shift, admissibility") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> area(0.2, 5.0), vel(-3.0, 3.0), shift(-2.0, 2.0);
  int checked = 0;
  double worst_oracle = 0.0, worst_mirror = 0.0, worst_shift = 0.0;
  bool lax = true, ordered = true;
  for (int i = 0; i < 1000; ++i) {
    const Primitive L{area(gen), vel(gen), 0.0}, R{area(gen), vel(gen), 0.0};
    const double k = 10.0;
    if (L.u + 4 * oracle_c(L.A, k) <= R.u - 4 * oracle_c(R.A, k)) continue;
    const StarSolution s = solve_star({L, R, k, kParams});
    worst_oracle = std::max(worst_oracle, std::abs(s.A_star - oracle_star(L, R, k)));

    const StarSolution m = solve_star({mirror(R), mirror(L), k, kParams});
    worst_mirror = std::max({worst_mirror, std::abs(m.A_star - s.A_star),
                             std::abs(m.u_star + s.u_star)});
    if (m.left_wave.kind != s.right_wave.kind) worst_mirror = 1.0;

    const double d = shift(gen);
    const StarSolution g =
        solve_star({{L.A, L.u + d, 0.0}, {R.A, R.u + d, 0.0}, k, kParams});
    worst_shift = std::max({worst_shift, std::abs(g.A_star - s.A_star),
                            std::abs(g.u_star - s.u_star - d),
                            std::abs(g.left_wave.head - s.left_wave.head - d),
                            std::abs(g.right_wave.head - s.right_wave.head - d)});

    if (s.left_wave.kind == WaveKind::Shock)
      lax = lax && s.left_wave.head < L.u - s.c_left && s.left_wave.head > s.u_star - s.c_star;
    else
      ordered = ordered && s.left_wave.head <= s.left_wave.tail;
    if (s.right_wave.kind == WaveKind::Shock)
      lax = lax && s.right_wave.head > R.u + s.c_right && s.right_wave.head < s.u_star + s.c_star;
    else
      ordered = ordered && s.right_wave.tail <= s.right_wave.head;

    const double tol = 1e-12 * std::max({std::abs(L.u), std::abs(R.u), s.c_left, s.c_right});
    CHECK(s.residual <= tol);
    ++checked;
  }
  CHECK(checked > 900);
  CHECK(worst_oracle < 1e-10);
  CHECK(worst_mirror < 1e-12);
  CHECK(worst_shift < 1e-11);
  CHECK(lax);
  CHECK(ordered);
}

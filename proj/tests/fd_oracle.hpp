#pragma once

// Ground truth for interface time derivatives: evolve the piecewise-linear
// initial data on a fine grid with a MUSCL-Hancock scheme built on the exact
// Riemann solver, then read the rates off U(0, t) by Richardson extrapolation
// of the difference quotient (U(0, t) - U*) / t at t = T/4, T/2 and T.
//
// The stiffness is k0 + k' x, so the reference sees the same coupling term as
// the generalized Riemann problem. Nothing from the GRP solver is used here.

#include <algorithm>
#include <cmath>
#include <vector>

#include "hemogrp/riemann.hpp"

namespace oracle {

using hemogrp::ModelParams;
using hemogrp::Primitive;
using hemogrp::Slopes;

struct GrpData {
  Primitive left, right;
  Slopes left_slope, right_slope;
  double k = 10.0;
  double dk = 0.0;
  ModelParams params;
};

struct FdRates {
  double dA_dt = 0.0;
  double du_dt = 0.0;
  Primitive axis;  // U(0, 0+) used as the base of the difference quotient
  int steps = 0;
};

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

inline FdRates fd_rates(const GrpData& g, int cells, double T, double cfl = 0.1) {
  const ModelParams& P = g.params;
  const double m = P.m(), rho = P.rho();
  const hemogrp::StarSolution star = hemogrp::solve_star({g.left, g.right, g.k, P});
  const Primitive axis = hemogrp::sample(star, 0.0);

  double smax = std::max({std::abs(g.left.u) + star.c_left, std::abs(g.right.u) + star.c_right,
                          std::abs(star.u_star) + star.c_star});
  smax *= 1.3;
  const double X = 1.2 * smax * T;
  const int N = cells + cells % 2;
  const double dx = 2.0 * X / N;
  auto xc = [&](int j) { return -X + (j + 0.5) * dx; };
  auto kx = [&](double x) { return g.k + g.dk * x; };

  // Exact cell averages of the linear data (q = A u is quadratic).
  std::vector<double> A(N), q(N);
  for (int j = 0; j < N; ++j) {
    const bool L = j < N / 2;
    const Primitive& w = L ? g.left : g.right;
    const Slopes& s = L ? g.left_slope : g.right_slope;
    const double x = xc(j);
    const double a = w.A + s.A * x, u = w.u + s.u * x;
    A[j] = a;
    q[j] = a * u + dx * dx * s.A * s.u / 12.0;
  }

  auto csq = [&](double a, double k) { return m * k / rho * P.alpha_pow(a); };
  auto coupling = [&](double a) { return a * P.alpha_pow(a) / (rho * (m + 1.0)) - a / rho; };
  auto pbar = [&](double a, double k) { return m * k / (rho * (m + 1.0)) * a * P.alpha_pow(a); };

  std::vector<double> fA(N + 1), fq(N + 1), Wa(N), Wu(N), sa(N), su(N), ha(N), hu(N);
  double t = 0.0;
  int steps = 0;
  int lo = 0, hi = N;  // active window, shrinks with the dependence cone
  FdRates out;
  out.axis = axis;
  // Difference quotients at T/4, T/2 and T.
  const double marks[3] = {0.25 * T, 0.5 * T, T};
  double D[3][2] = {};
  int next_mark = 0;

  auto sample_axis = [&](double* a, double* u) {
    const int j = N / 2;
    const double Aa = 0.5 * (A[j - 1] + A[j]);
    const double qa = 0.5 * (q[j - 1] + q[j]);
    *a = Aa;
    *u = qa / Aa;
  };

  while (t < T) {
    double dt = cfl * dx / smax;
    bool at_mark = false;
    if (t + dt >= marks[next_mark]) {
      dt = marks[next_mark] - t;
      at_mark = true;
    }

    const int margin = 3;
    lo = std::max(0, N / 2 - static_cast<int>(std::ceil(smax * (T - t) / dx)) - margin);
    hi = std::min(N, N / 2 + static_cast<int>(std::ceil(smax * (T - t) / dx)) + margin);

    for (int j = lo; j < hi; ++j) {
      Wa[j] = A[j];
      Wu[j] = q[j] / A[j];
    }
    for (int j = lo; j < hi; ++j) {
      const int jm = std::max(j - 1, lo), jp = std::min(j + 1, hi - 1);
      sa[j] = minmod(Wa[j] - Wa[jm], Wa[jp] - Wa[j]) / dx;
      su[j] = minmod(Wu[j] - Wu[jm], Wu[jp] - Wu[j]) / dx;
      const double k = kx(xc(j));
      const double Ps = g.dk / rho * (P.alpha_pow(Wa[j]) - 1.0);
      ha[j] = Wa[j] - 0.5 * dt * (Wa[j] * su[j] + Wu[j] * sa[j]);
      hu[j] = Wu[j] - 0.5 * dt * (Wu[j] * su[j] + csq(Wa[j], k) / Wa[j] * sa[j] + Ps);
    }
    for (int f = lo + 1; f < hi; ++f) {
      const double x = -X + f * dx;
      const double k = kx(x);
      const Primitive wl{ha[f - 1] + 0.5 * dx * sa[f - 1], hu[f - 1] + 0.5 * dx * su[f - 1], 0.0};
      const Primitive wr{ha[f] - 0.5 * dx * sa[f], hu[f] - 0.5 * dx * su[f], 0.0};
      const Primitive w = hemogrp::sample(hemogrp::solve_star({wl, wr, k, P}), 0.0);
      fA[f] = w.A * w.u;
      fq[f] = w.A * w.u * w.u + pbar(w.A, k);
    }
    for (int j = lo + 1; j < hi - 1; ++j) {
      A[j] -= dt / dx * (fA[j + 1] - fA[j]);
      q[j] -= dt / dx * (fq[j + 1] - fq[j]) + dt * g.dk * coupling(ha[j]);
    }
    t = at_mark ? marks[next_mark] : t + dt;
    ++steps;
    if (at_mark) {
      double a, u;
      sample_axis(&a, &u);
      D[next_mark][0] = (a - axis.A) / t;
      D[next_mark][1] = (u - axis.u) / t;
      ++next_mark;
      if (next_mark == 3) break;
    }
  }
  // D(t) = U_t + O(t) + O(t^2): eliminate both error terms.
  out.dA_dt = (8.0 * D[0][0] - 6.0 * D[1][0] + D[2][0]) / 3.0;
  out.du_dt = (8.0 * D[0][1] - 6.0 * D[1][1] + D[2][1]) / 3.0;
  out.steps = steps;
  return out;
}

}  // namespace oracle

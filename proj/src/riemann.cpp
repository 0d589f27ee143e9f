#include "hemogrp/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hemogrp {

const char* to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::Shock: return "shock";
    case WaveKind::Trivial: return "trivial";
  }
  return "unknown";
}

double StarSolution::psi_left() const {
  return left.u + 2.0 / params.m() * c_left;
}

double StarSolution::phi_right() const {
  return right.u - 2.0 / params.m() * c_right;
}

namespace {

// m k A (A/Ae)^m / (rho (m+1)), the pressure part of the momentum flux.
double pbar(double A, double k, const ModelParams& params) {
  const double m = params.m();
  return m * k / (params.rho() * (m + 1.0)) * A * params.alpha_pow(A);
}

double radicand(double A, double Abar, double k, const ModelParams& params) {
  return (A - Abar) * (pbar(A, k, params) - pbar(Abar, k, params)) / (A * Abar);
}

// Velocity on a wave curve through `side` and its derivative in A.
// sign = -1 for the left curve, +1 for the right curve.
struct CurvePoint {
  double u;
  double du;
};

CurvePoint wave_curve(double A, const Primitive& side, double c_side, double k,
                      const ModelParams& params, double sign) {
  const double m = params.m();
  if (A <= side.A) {
    const double c = wave_speed(A, k, params);
    return {side.u + sign * 2.0 / m * (c - c_side), sign * c / A};
  }
  const double Phi = phi_jump(A, side.A, k, params);
  double dPhi;
  if (A - side.A < 1e-8 * side.A) {
    dPhi = wave_speed(A, k, params) / A;
  } else {
    dPhi = phi_jump_derivatives(A, side.A, k, params).dA;
  }
  return {side.u + sign * Phi, sign * dPhi};
}

}  // namespace

double phi_jump(double A, double Abar, double k, const ModelParams& params) {
  if (!(A > 0.0) || !(Abar > 0.0))
    throw std::domain_error("phi_jump requires positive areas");
  if (A == Abar) return 0.0;
  return std::sqrt(std::max(0.0, radicand(A, Abar, k, params)));
}

PhiDerivatives phi_jump_derivatives(double A, double Abar, double k,
                                    const ModelParams& params) {
  if (!(A > 0.0) || !(Abar > 0.0))
    throw std::domain_error("phi_jump_derivatives requires positive areas");
  if (std::abs(A - Abar) < kZeroStrength * std::max(A, Abar))
    throw AcousticStrengthError(
        "zero-strength wave: shock derivatives are singular, use the acoustic "
        "path");
  const double m = params.m();
  const double pA = pbar(A, k, params);
  const double pB = pbar(Abar, k, params);
  const double R = (A - Abar) * (pA - pB) / (A * Abar);
  const double Phi = std::sqrt(R);
  const double dR_dA = ((pA - pB) + (A - Abar) * (m + 1.0) * pA / A) / (A * Abar) - R / A;
  const double dR_dAbar =
      (-(pA - pB) - (A - Abar) * (m + 1.0) * pB / Abar) / (A * Abar) - R / Abar;
  return {dR_dA / (2.0 * Phi), dR_dAbar / (2.0 * Phi), Phi / (2.0 * k)};
}

double shock_speed(const Primitive& inside, const Primitive& outside) {
  if (inside.A == outside.A)
    throw AcousticStrengthError("shock speed undefined for a zero-strength jump");
  return (inside.A * inside.u - outside.A * outside.u) / (inside.A - outside.A);
}

StarSolution solve_star(const RiemannInput& in) {
  if (!(in.left.A > 0.0) || !(in.right.A > 0.0))
    throw std::domain_error("Riemann data must have positive areas");
  if (!(in.k > 0.0)) throw std::domain_error("stiffness must be positive");

  const ModelParams& P = in.params;
  const double m = P.m();
  StarSolution s;
  s.left = in.left;
  s.right = in.right;
  s.k = in.k;
  s.params = P;
  s.c_left = wave_speed(in.left.A, in.k, P);
  s.c_right = wave_speed(in.right.A, in.k, P);

  const double psiL = s.psi_left();
  const double phiR = s.phi_right();
  if (!(psiL > phiR)) {
    std::ostringstream os;
    os << "vacuum: psi_L = " << psiL << " <= phi_R = " << phiR;
    throw VacuumError(os.str());
  }

  const double scale =
      std::max({std::abs(in.left.u), std::abs(in.right.u), s.c_left, s.c_right});
  const double tol = 1e-12 * scale;

  auto residual = [&](double A, double* dF) {
    const CurvePoint l = wave_curve(A, in.left, s.c_left, in.k, P, -1.0);
    const CurvePoint r = wave_curve(A, in.right, s.c_right, in.k, P, +1.0);
    if (dF) *dF = l.du - r.du;
    return l.u - r.u;
  };

  double A;
  double F = 0.0;
  int it = 0;
  if (in.left.A == in.right.A && in.left.u == in.right.u) {
    A = in.left.A;
  } else {
    // Two-rarefaction closed form as the starting guess.
    A = area_from_wavespeed(m * (psiL - phiR) / 4.0, in.k, P);
    bool ok = false;
    for (; it < 50; ++it) {
      double dF = 0.0;
      F = residual(A, &dF);
      if (F == 0.0) {
        ok = true;
        break;
      }
      const double next = A - F / dF;
      if (!(next > 0.0) || !std::isfinite(next)) break;
      const double dA = next - A;
      A = next;
      if (std::abs(dA) <= 1e-15 * A) {
        F = residual(A, nullptr);
        ok = true;
        ++it;
        break;
      }
    }
    if (!ok || std::abs(F) > tol) {
      // Bisection fallback; F is strictly decreasing in A.
      double lo = 1e-12;
      double hi = 10.0 * std::max(in.left.A, in.right.A);
      int widen = 0;
      while (residual(hi, nullptr) > 0.0) {
        lo = hi;
        hi *= 10.0;
        if (++widen > 60) throw ConvergenceError("cannot bracket star area");
      }
      for (int b = 0; b < 400 && hi - lo > 1e-15 * hi; ++b, ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid, nullptr) > 0.0) lo = mid; else hi = mid;
      }
      A = 0.5 * (lo + hi);
      F = residual(A, nullptr);
      if (std::abs(F) > tol) {
        std::ostringstream os;
        os << "star-state iteration failed: A=" << A << " residual=" << F
           << " (A_L=" << in.left.A << ", u_L=" << in.left.u
           << ", A_R=" << in.right.A << ", u_R=" << in.right.u << ", k=" << in.k << ")";
        throw ConvergenceError(os.str());
      }
    }
  }

  s.A_star = A;
  s.iterations = it;
  s.residual = std::abs(F);
  // Average both curves so that mirrored inputs give mirrored velocities.
  const CurvePoint l = wave_curve(A, in.left, s.c_left, in.k, P, -1.0);
  const CurvePoint r = wave_curve(A, in.right, s.c_right, in.k, P, +1.0);
  s.u_star = 0.5 * (l.u + r.u);
  s.c_star = wave_speed(A, in.k, P);

  const Primitive star{s.A_star, s.u_star, 0.0};
  // Left wave.
  if (std::abs(A - in.left.A) <= kZeroStrength * std::max(A, in.left.A)) {
    s.left_wave = {WaveKind::Trivial, in.left.u - s.c_left, s.u_star - s.c_star};
  } else if (A < in.left.A) {
    s.left_wave = {WaveKind::Rarefaction, in.left.u - s.c_left, s.u_star - s.c_star};
  } else {
    const double sigma = shock_speed(star, in.left);
    s.left_wave = {WaveKind::Shock, sigma, sigma};
  }
  // Right wave.
  if (std::abs(A - in.right.A) <= kZeroStrength * std::max(A, in.right.A)) {
    s.right_wave = {WaveKind::Trivial, in.right.u + s.c_right, s.u_star + s.c_star};
  } else if (A < in.right.A) {
    s.right_wave = {WaveKind::Rarefaction, in.right.u + s.c_right, s.u_star + s.c_star};
  } else {
    const double sigma = shock_speed(star, in.right);
    s.right_wave = {WaveKind::Shock, sigma, sigma};
  }
  return s;
}

Primitive sample(const StarSolution& s, double xi) {
  const ModelParams& P = s.params;
  const double m = P.m();
  // Left of / inside the left wave.
  if (s.left_wave.kind == WaveKind::Shock) {
    if (xi < s.left_wave.head) return s.left;
  } else {
    if (xi < s.left_wave.head) return s.left;
    if (xi < s.left_wave.tail) {
      const double c = m * (s.psi_left() - xi) / (m + 2.0);
      return {area_from_wavespeed(c, s.k, P), xi + c, s.left.v};
    }
  }
  // Right of / inside the right wave.
  if (s.right_wave.kind == WaveKind::Shock) {
    if (xi > s.right_wave.head) return s.right;
  } else {
    if (xi > s.right_wave.head) return s.right;
    if (xi > s.right_wave.tail) {
      const double c = m * (xi - s.phi_right()) / (m + 2.0);
      return {area_from_wavespeed(c, s.k, P), xi - c, s.right.v};
    }
  }
  // The transverse velocity jumps across the particle path x/t = u*.
  double v;
  if (xi < s.u_star) v = s.left.v;
  else if (xi > s.u_star) v = s.right.v;
  else v = 0.5 * (s.left.v + s.right.v);
  return {s.A_star, s.u_star, v};
}

}  // namespace hemogrp

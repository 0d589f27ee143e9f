#include "hemogrp/grp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hemogrp {

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Nonsonic: return "nonsonic";
    case CaseTag::SonicLeft: return "sonic-left";
    case CaseTag::SonicRight: return "sonic-right";
    case CaseTag::Acoustic: return "acoustic";
    case CaseTag::OneSidedLeft: return "one-sided-left";
    case CaseTag::OneSidedRight: return "one-sided-right";
  }
  return "unknown";
}

namespace {

// dk/dx source P(A) = (k'/rho) ((A/Ae)^m - 1) of the velocity equation.
double source_P(double A, double dk, const ModelParams& P) {
  return dk / P.rho() * (P.alpha_pow(A) - 1.0);
}

// Shared pieces of the fan integration. s is the distance of beta from the
// transported invariant (psi_L - beta or beta - phi_R), s0 its value at the
// fan head and theta = s / s0 = c / c_side.
struct FanTerms {
  double p, s0, theta;
};

FanTerms fan_terms(double s, double c_side, double m) {
  const double s0 = (m + 2.0) * c_side / m;
  return {(m + 2.0) / (2.0 * m), s0, s / s0};
}

// Near-sonic guard for the shock relations.
bool near_sonic(double u, double c) { return std::abs(u * u - c * c) < 1e-10 * c * c; }

}  // namespace

double left_fan_rhs(const GrpInput& in, const StarSolution& star, double beta) {
  const ModelParams& P = in.params;
  const double m = P.m(), rho = P.rho(), k = in.k, dk = in.dk;
  const Primitive& L = in.left;
  const Slopes& dL = in.left_slope;
  const double cL = star.c_left;
  const double psiL = star.psi_left();
  const double c = m * (psiL - beta) / (m + 2.0);
  const FanTerms f = fan_terms(psiL - beta, cL, m);

  const double dpsi = dL.u + cL / L.A * dL.A + cL / (m * k) * dk;
  const double psi_a0 = std::pow(f.s0, -f.p) * (dk / rho + L.u * cL * dk / (m * k) - 2.0 * cL * dpsi);
  double psi_a = psi_a0;
  if (dk != 0.0) {
    psi_a += dk / rho * std::pow(f.s0, -f.p) * (std::pow(f.theta, -f.p) - 1.0) -
             psiL / (m - 2.0) * (dk / k) * std::pow(f.s0, 1.0 - f.p) *
                 (std::pow(f.theta, 1.0 - f.p) - 1.0) +
             2.0 / ((m + 2.0) * (3.0 * m - 2.0)) * (dk / k) * std::pow(f.s0, 2.0 - f.p) *
                 (std::pow(f.theta, 2.0 - f.p) - 1.0);
  }
  return (beta + 2.0 * c) / (2.0 * c) * std::pow(psiL - beta, f.p) * psi_a -
         beta / (2.0 * c) * (dk / rho + (beta + c) * c * dk / (m * k));
}

double right_fan_rhs(const GrpInput& in, const StarSolution& star, double beta) {
  const ModelParams& P = in.params;
  const double m = P.m(), rho = P.rho(), k = in.k, dk = in.dk;
  const Primitive& R = in.right;
  const Slopes& dR = in.right_slope;
  const double cR = star.c_right;
  const double phiR = star.phi_right();
  const double c = m * (beta - phiR) / (m + 2.0);
  const FanTerms f = fan_terms(beta - phiR, cR, m);

  const double dphi = dR.u - cR / R.A * dR.A - cR / (m * k) * dk;
  const double phi_a0 = std::pow(f.s0, -f.p) * (dk / rho - R.u * cR * dk / (m * k) + 2.0 * cR * dphi);
  double phi_a = phi_a0;
  if (dk != 0.0) {
    phi_a += dk / rho * std::pow(f.s0, -f.p) * (std::pow(f.theta, -f.p) - 1.0) +
             phiR / (m - 2.0) * (dk / k) * std::pow(f.s0, 1.0 - f.p) *
                 (std::pow(f.theta, 1.0 - f.p) - 1.0) +
             2.0 / ((m + 2.0) * (3.0 * m - 2.0)) * (dk / k) * std::pow(f.s0, 2.0 - f.p) *
                 (std::pow(f.theta, 2.0 - f.p) - 1.0);
  }
  return -(beta - 2.0 * c) / (2.0 * c) * std::pow(beta - phiR, f.p) * phi_a +
         beta / (2.0 * c) * (dk / rho - (beta - c) * c * dk / (m * k));
}

LinearRelation left_rarefaction_relation(const GrpInput& in, const StarSolution& star) {
  const double tail = star.u_star - star.c_star;
  return {1.0, star.c_star / star.A_star, left_fan_rhs(in, star, tail)};
}

LinearRelation right_rarefaction_relation(const GrpInput& in, const StarSolution& star) {
  const double tail = star.u_star + star.c_star;
  return {1.0, -star.c_star / star.A_star, right_fan_rhs(in, star, tail)};
}

LinearRelation right_shock_relation(const GrpInput& in, const StarSolution& star) {
  const ModelParams& P = in.params;
  const double A = star.A_star, u = star.u_star, c = star.c_star;
  const Primitive& R = in.right;
  const Slopes& dR = in.right_slope;
  const double sigma = star.right_wave.head;
  const PhiDerivatives phi = phi_jump_derivatives(A, R.A, in.k, P);
  const double D = u * u - c * c;
  const double Pstar = source_P(A, in.dk, P);
  const double PR = source_P(R.A, in.dk, P);
  const double cR = star.c_right;

  const double g = u + A * phi.dA;
  const double rest = (sigma - R.u) * dR.u - PR - cR * cR / R.A * dR.A +
                      phi.dAbar * ((sigma - R.u) * dR.A - R.A * dR.u) +
                      sigma * in.dk * phi.dk;
  if (near_sonic(u, c)) {
    return {D - sigma * g, sigma * (u * phi.dA + c * c / A) - D * phi.dA,
            D * rest + sigma * Pstar * g};
  }
  return {1.0 - sigma * g / D, sigma * (u * phi.dA + c * c / A) / D - phi.dA,
          rest + sigma * Pstar * g / D};
}

LinearRelation left_shock_relation(const GrpInput& in, const StarSolution& star) {
  const ModelParams& P = in.params;
  const double A = star.A_star, u = star.u_star, c = star.c_star;
  const Primitive& L = in.left;
  const Slopes& dL = in.left_slope;
  const double sigma = star.left_wave.head;
  const PhiDerivatives phi = phi_jump_derivatives(A, L.A, in.k, P);
  const double D = u * u - c * c;
  const double Pstar = source_P(A, in.dk, P);
  const double PL = source_P(L.A, in.dk, P);
  const double cL = star.c_left;

  const double g = u - A * phi.dA;
  const double rest = (sigma - L.u) * dL.u - PL - cL * cL / L.A * dL.A -
                      phi.dAbar * ((sigma - L.u) * dL.A - L.A * dL.u) -
                      sigma * in.dk * phi.dk;
  if (near_sonic(u, c)) {
    return {D - sigma * g, sigma * (c * c / A - u * phi.dA) + D * phi.dA,
            D * rest + sigma * Pstar * g};
  }
  return {1.0 - sigma * g / D, sigma * (c * c / A - u * phi.dA) / D + phi.dA,
          rest + sigma * Pstar * g / D};
}

TimeRates solve_nonsonic(const LinearRelation& l, const LinearRelation& r) {
  const double det = l.a * r.b - r.a * l.b;
  const double scale = std::abs(l.a * r.b) + std::abs(r.a * l.b);
  if (!(std::abs(det) > 1e-12 * scale)) {
    std::ostringstream os;
    os << "degenerate GRP system: det=" << det << " (a_L=" << l.a << ", b_L=" << l.b
       << ", a_R=" << r.a << ", b_R=" << r.b << ")";
    throw DegenerateSystemError(os.str());
  }
  return {(l.d * r.b - r.d * l.b) / det, (l.a * r.d - r.a * l.d) / det};
}

TimeRates sonic_rates(FanSide side, const Primitive& axis, double k, double dk,
                      double d_at_zero, const ModelParams& params,
                      SonicClosure closure) {
  const double m = params.m();
  const double c = wave_speed(axis.A, k, params);
  // On the axis the fan invariant has rate d; the crossing invariant picks up,
  // besides its source, the drift of the sonic point off x = 0.
  const bool drift = closure == SonicClosure::AxisDrift;
  const double kappa = (2.0 - m) / (2.0 * (m + 2.0));
  const double scale = dk / (m * k);
  double phi_t, psi_t;
  if (side == FanSide::Left) {
    const double B1 = scale * (m * k / params.rho() - axis.u * c);
    psi_t = d_at_zero;
    phi_t = drift ? 0.5 * B1 - kappa * d_at_zero : B1;
  } else {
    const double B2 = scale * (m * k / params.rho() + axis.u * c);
    phi_t = d_at_zero;
    psi_t = drift ? 0.5 * B2 - kappa * d_at_zero : B2;
  }
  return {0.5 * (phi_t + psi_t), axis.A / (2.0 * c) * (psi_t - phi_t)};
}

TimeRates acoustic_rates(const GrpInput& in) {
  const ModelParams& P = in.params;
  const double A = 0.5 * (in.left.A + in.right.A);
  const double u = 0.5 * (in.left.u + in.right.u);
  const double c = wave_speed(A, in.k, P);
  const Slopes& l = in.left_slope;
  const Slopes& r = in.right_slope;
  const double u_x = (A * l.u + A * r.u + c * (l.A - r.A)) / (2.0 * A);
  const double A_x = (A * l.u - A * r.u + c * (l.A + r.A)) / (2.0 * c);
  return {-u * u_x - c * c / A * A_x - source_P(A, in.dk, P), -A * u_x - u * A_x};
}

TimeRates one_sided_rates(const Primitive& w, const Slopes& s, double k,
                          double dk, const ModelParams& params) {
  const double c = wave_speed(w.A, k, params);
  return {-w.u * s.u - c * c / w.A * s.A - source_P(w.A, dk, params),
          -w.A * s.u - w.u * s.A};
}

double transverse_rate(const GrpInput& in, const StarSolution& star,
                       const Primitive& axis) {
  if (axis.u == 0.0) return 0.0;
  const bool from_left = axis.u > 0.0;
  const Primitive& side = from_left ? in.left : in.right;
  const double dv = from_left ? in.left_slope.v : in.right_slope.v;
  const WaveInfo& wave = from_left ? star.left_wave : star.right_wave;
  // Stretching of a fluid element between the side state and the axis.
  double ratio = axis.A / side.A;
  if (wave.kind == WaveKind::Shock && axis.A == star.A_star) {
    const double sigma = wave.head;
    ratio = (sigma - side.u) / (sigma - star.u_star);
  }
  return -axis.u * ratio * dv;
}

InterfaceRates grp_interface(const GrpInput& in, SonicClosure closure) {
  const ModelParams& P = in.params;
  InterfaceRates out;

  const double Amax = std::max(in.left.A, in.right.A);
  const bool same_A = std::abs(in.left.A - in.right.A) <= kZeroStrength * Amax;
  const bool same_u = std::abs(in.left.u - in.right.u) <=
                      kZeroStrength * std::max({1.0, std::abs(in.left.u), std::abs(in.right.u)});

  auto one_sided = [&](bool left) {
    const Primitive& w = left ? in.left : in.right;
    const Slopes& s = left ? in.left_slope : in.right_slope;
    const TimeRates r = one_sided_rates(w, s, in.k, in.dk, P);
    out.du_dt = r.du_dt;
    out.dA_dt = r.dA_dt;
    out.dv_dt = -w.u * s.v;
    out.star = w;
    out.tag = left ? CaseTag::OneSidedLeft : CaseTag::OneSidedRight;
    return out;
  };

  if (same_A && same_u) {
    const double A = 0.5 * (in.left.A + in.right.A);
    const double u = 0.5 * (in.left.u + in.right.u);
    const double c = wave_speed(A, in.k, P);
    if (u - c > 0.0) return one_sided(true);
    if (u + c < 0.0) return one_sided(false);
    const TimeRates r = acoustic_rates(in);
    out.du_dt = r.du_dt;
    out.dA_dt = r.dA_dt;
    double v = 0.5 * (in.left.v + in.right.v);
    double dv = 0.0;
    if (u > 0.0) {
      v = in.left.v;
      dv = in.left_slope.v;
    } else if (u < 0.0) {
      v = in.right.v;
      dv = in.right_slope.v;
    }
    out.dv_dt = -u * dv;
    out.star = {A, u, v};
    out.tag = CaseTag::Acoustic;
    return out;
  }

  const StarSolution star = solve_star({in.left, in.right, in.k, P});
  const WaveInfo& lw = star.left_wave;
  const WaveInfo& rw = star.right_wave;

  if (lw.head > 0.0) return one_sided(true);
  if (rw.head < 0.0) return one_sided(false);

  const double m = P.m();
  if (lw.kind == WaveKind::Rarefaction && lw.tail > 0.0) {
    const double c0 = m * star.psi_left() / (m + 2.0);
    const Primitive axis{area_from_wavespeed(c0, in.k, P), c0, in.left.v};
    const TimeRates r =
        sonic_rates(FanSide::Left, axis, in.k, in.dk, left_fan_rhs(in, star, 0.0), P, closure);
    out.du_dt = r.du_dt;
    out.dA_dt = r.dA_dt;
    out.dv_dt = transverse_rate(in, star, axis);
    out.star = axis;
    out.tag = CaseTag::SonicLeft;
    return out;
  }
  if (rw.kind == WaveKind::Rarefaction && rw.tail < 0.0) {
    const double c0 = -m * star.phi_right() / (m + 2.0);
    const Primitive axis{area_from_wavespeed(c0, in.k, P), -c0, in.right.v};
    const TimeRates r =
        sonic_rates(FanSide::Right, axis, in.k, in.dk, right_fan_rhs(in, star, 0.0), P, closure);
    out.du_dt = r.du_dt;
    out.dA_dt = r.dA_dt;
    out.dv_dt = transverse_rate(in, star, axis);
    out.star = axis;
    out.tag = CaseTag::SonicRight;
    return out;
  }

  const LinearRelation l = lw.kind == WaveKind::Shock ? left_shock_relation(in, star)
                                                      : left_rarefaction_relation(in, star);
  const LinearRelation r = rw.kind == WaveKind::Shock ? right_shock_relation(in, star)
                                                      : right_rarefaction_relation(in, star);
  const TimeRates t = solve_nonsonic(l, r);
  out.du_dt = t.du_dt;
  out.dA_dt = t.dA_dt;
  out.star = sample(star, 0.0);
  out.dv_dt = transverse_rate(in, star, out.star);
  out.tag = CaseTag::Nonsonic;
  return out;
}

}  // namespace hemogrp

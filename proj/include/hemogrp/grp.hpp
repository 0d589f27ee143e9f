#pragma once

// Generalized Riemann problem: limiting time derivatives of (A, u, v) at a
// cell interface for piecewise-linear initial data and a stiffness k(x) that
// is smooth across the interface.

#include <array>

#include "hemogrp/model.hpp"
#include "hemogrp/riemann.hpp"

namespace hemogrp {

struct GrpInput {
  Primitive left;       // interface value extrapolated from the left cell
  Primitive right;      // interface value extrapolated from the right cell
  Slopes left_slope;
  Slopes right_slope;
  double k = 1.0;       // k at the interface
  double dk = 0.0;      // k' at the interface
  ModelParams params;
};

/// a (du/dt)* + b (dA/dt)* = d
struct LinearRelation {
  double a = 1.0;
  double b = 0.0;
  double d = 0.0;
};

struct TimeRates {
  double du_dt = 0.0;
  double dA_dt = 0.0;
};

enum class CaseTag {
  Nonsonic,
  SonicLeft,
  SonicRight,
  Acoustic,
  OneSidedLeft,
  OneSidedRight,
};
inline constexpr int kCaseTagCount = 6;

const char* to_string(CaseTag tag);

struct InterfaceRates {
  double dA_dt = 0.0;
  double du_dt = 0.0;
  double dv_dt = 0.0;
  Primitive star;  // state on the interface at t -> 0+
  CaseTag tag = CaseTag::Acoustic;
};

class DegenerateSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Right-hand side d_L(beta) of the psi relation through a left-facing
/// (u - c) fan, for beta between the fan head and tail.
double left_fan_rhs(const GrpInput& in, const StarSolution& star, double beta);
/// Mirror image for a right-facing (u + c) fan: d_R(beta).
double right_fan_rhs(const GrpInput& in, const StarSolution& star, double beta);

/// Relation carried by a left rarefaction (or zero-strength wave), evaluated
/// at the fan tail u* - c*.
LinearRelation left_rarefaction_relation(const GrpInput& in, const StarSolution& star);
/// Relation carried by a right rarefaction, evaluated at the fan tail u* + c*.
LinearRelation right_rarefaction_relation(const GrpInput& in, const StarSolution& star);

/// Relations carried by a shock, from differentiating the Rankine-Hugoniot
/// velocity jump along the shock path. When the star state is within
/// 1e-10 c*^2 of sonic the relation is returned multiplied through by
/// (u*^2 - c*^2), which removes the pole without changing its solution set.
LinearRelation right_shock_relation(const GrpInput& in, const StarSolution& star);
LinearRelation left_shock_relation(const GrpInput& in, const StarSolution& star);

/// Solves the 2x2 system. Throws DegenerateSystemError on a vanishing
/// determinant.
TimeRates solve_nonsonic(const LinearRelation& left, const LinearRelation& right);

enum class FanSide { Left, Right };

/// How the invariant that crosses a transonic fan is closed on the t-axis.
/// Characteristic: its rate equals its source (B1 or B2), as if the sonic
/// point stayed on x = 0. AxisDrift: also accounts for the sonic point moving
/// off the axis at first order in t.
enum class SonicClosure { AxisDrift, Characteristic };

/// Rates when the t-axis lies inside a fan. `axis` is the fan state on the
/// ray x/t = 0 and `d_at_zero` the fan relation's right-hand side at beta = 0.
TimeRates sonic_rates(FanSide side, const Primitive& axis, double k, double dk,
                      double d_at_zero, const ModelParams& params,
                      SonicClosure closure = SonicClosure::AxisDrift);

/// Zero initial jump with (possibly) different slopes; the t-axis is assumed
/// to lie between the two characteristics.
TimeRates acoustic_rates(const GrpInput& in);

/// Smooth-side rates (dU/dt = -F'(U) U_x - L(U) G_x in primitive form).
TimeRates one_sided_rates(const Primitive& w, const Slopes& slope, double k,
                          double dk, const ModelParams& params);

/// (dv/dt)* for the passively transported transverse velocity.
double transverse_rate(const GrpInput& in, const StarSolution& star,
                       const Primitive& axis);

InterfaceRates grp_interface(const GrpInput& in,
                             SonicClosure closure = SonicClosure::AxisDrift);

}  // namespace hemogrp

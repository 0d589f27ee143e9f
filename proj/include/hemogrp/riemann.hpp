#pragma once

// Exact solver for the homogeneous Riemann problem with frozen stiffness k.
//
// The star area A* is the root of f_L(A) - f_R(A) where
//   f_L(A) = u_L - (2/m)(c(A) - c_L)   for A <= A_L (rarefaction)
//          = u_L - Phi(A; A_L)         for A >  A_L (shock)
// and f_R is the mirror image with '+' signs.

#include <stdexcept>
#include <string>

#include "hemogrp/model.hpp"

namespace hemogrp {

/// Raised when the two rarefaction curves do not intersect (psi_L <= phi_R).
class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when neither Newton nor bisection reaches the residual tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the shock-derivative formulas at (numerically) zero strength.
class AcousticStrengthError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative jump below which a wave is treated as zero-strength.
inline constexpr double kZeroStrength = 1e-10;

enum class WaveKind { Rarefaction, Shock, Trivial };

const char* to_string(WaveKind kind);

struct WaveInfo {
  WaveKind kind = WaveKind::Trivial;
  // Fans: head is the outer edge, tail the edge next to the star region.
  // Shocks and trivial waves: head == tail == speed.
  double head = 0.0;
  double tail = 0.0;
};

struct RiemannInput {
  Primitive left;
  Primitive right;
  double k = 1.0;
  ModelParams params;
};

struct StarSolution {
  Primitive left;
  Primitive right;
  double k = 1.0;
  ModelParams params;

  double A_star = 0.0;
  double u_star = 0.0;
  double c_star = 0.0;
  double c_left = 0.0;
  double c_right = 0.0;
  WaveInfo left_wave;
  WaveInfo right_wave;
  int iterations = 0;
  double residual = 0.0;

  double psi_left() const;   // u_L + (2/m) c_L
  double phi_right() const;  // u_R - (2/m) c_R
};

/// Velocity jump across a shock joining A to Abar (Rankine-Hugoniot).
double phi_jump(double A, double Abar, double k, const ModelParams& params);

struct PhiDerivatives {
  double dA = 0.0;
  double dAbar = 0.0;
  double dk = 0.0;
};

/// Partial derivatives of phi_jump. Throws AcousticStrengthError when
/// |A - Abar| < 1e-10 max(A, Abar).
PhiDerivatives phi_jump_derivatives(double A, double Abar, double k,
                                    const ModelParams& params);

/// Shock speed (A u - Abar ubar)/(A - Abar). Throws AcousticStrengthError
/// for equal areas.
double shock_speed(const Primitive& inside, const Primitive& outside);

StarSolution solve_star(const RiemannInput& input);

/// Self-similar solution on the ray x/t = xi.
Primitive sample(const StarSolution& star, double xi);

}  // namespace hemogrp

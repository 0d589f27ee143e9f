#pragma once

// Physical model for one-dimensional arterial flow with a spatially varying
// wall stiffness k(x):
//
//   A_t + (A u)_x = 0
//   (A u)_t + (A u^2)_x + (A / rho) p_x = 0,   p = k(x) ((A/Ae)^m - 1)
//
// All quantities are in CGS units (cm, s, g).

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace hemogrp {

/// Material constants of the vessel/blood pair. The second pressure exponent
/// of the general tube law is fixed to zero (arteries).
class ModelParams {
 public:
  ModelParams() = default;
  /// Throws std::invalid_argument unless rho > 0, Ae > 0, 0 < m < 2, m != 2/3.
  ModelParams(double rho, double area_eq, double m);

  double rho() const { return rho_; }
  double area_eq() const { return area_eq_; }
  double m() const { return m_; }

  /// (A/Ae)^m, with a sqrt fast path for m = 1/2.
  double alpha_pow(double A) const;

 private:
  double rho_ = 1.05;
  double area_eq_ = 1.0;
  double m_ = 0.5;
  bool half_ = true;
};

struct Primitive {
  double A = 1.0;
  double u = 0.0;
  double v = 0.0;  // transverse velocity, 2D sweeps only
};

struct Conserved {
  double A = 1.0;
  double q = 0.0;  // A u
  double r = 0.0;  // A v
};

/// Spatial derivatives of the primitive variables.
struct Slopes {
  double A = 0.0;
  double u = 0.0;
  double v = 0.0;
};

Conserved to_conserved(const Primitive& w);
/// Throws std::domain_error if A <= 0.
Primitive to_primitive(const Conserved& U);

/// Chain rule between conserved slopes (A', q', r') and primitive slopes at
/// the state w.
Slopes primitive_slopes(const Primitive& w, const Conserved& dU);
Conserved conserved_slopes(const Primitive& w, const Slopes& dw);

/// Wall stiffness k(x) together with its analytic derivative.
///
/// Piecewise profiles use the [x_i, x_{i+1}) convention: a point sitting on a
/// break point belongs to the segment that starts there, for both k and k'.
class StiffnessProfile {
 public:
  enum class Kind { Constant, SineRamp, Sinusoidal, CustomPiecewise };

  static StiffnessProfile constant(double k);
  /// k_left on x < x_start; k_left (1 - amplitude sin(wavenumber (x - x_start)))
  /// on [x_start, x_end); k_right on x >= x_end. Continuity at x_end is checked.
  static StiffnessProfile sine_ramp(double x_start, double x_end, double k_left,
                                    double amplitude, double wavenumber,
                                    double k_right);
  /// The profile of the arterial Riemann problems: 6 -> 3 over [0.6, 0.8).
  static StiffnessProfile standard_ramp();
  /// base + amplitude sin(2 pi x / wavelength).
  static StiffnessProfile sinusoidal(double base, double amplitude,
                                     double wavelength);
  /// Continuous piecewise-linear interpolation through (x_i, k_i), constant
  /// outside the break points.
  static StiffnessProfile piecewise(std::vector<double> xs,
                                    std::vector<double> ks);

  Kind kind() const { return kind_; }
  std::string name() const;
  bool is_constant() const { return kind_ == Kind::Constant; }

  double value(double x) const;
  double derivative(double x) const;

 private:
  Kind kind_ = Kind::Constant;
  // Constant: p_[0] = k. SineRamp: x_start, x_end, k_left, amplitude,
  // wavenumber, k_right. Sinusoidal: base, amplitude, wavelength.
  std::array<double, 6> p_{};
  std::vector<double> xs_, ks_;
};

struct InvariantPair {
  double phi = 0.0;  // u - (2/m) c
  double psi = 0.0;  // u + (2/m) c
};

double pressure(double A, double k, const ModelParams& params);
double wave_speed(double A, double k, const ModelParams& params);
double area_from_wavespeed(double c, double k, const ModelParams& params);

InvariantPair invariants(const Primitive& w, double k,
                         const ModelParams& params);
/// Throws std::domain_error if psi <= phi.
Primitive state_from_invariants(const InvariantPair& inv, double k,
                                const ModelParams& params);

/// Conservative flux (A u, A u^2 + m k A^{m+1} / (rho (m+1) Ae^m)).
std::array<double, 2> flux(const Conserved& U, double k,
                           const ModelParams& params);
/// Nonzero entry of the coupling matrix L(U) multiplying d(k)/dx.
double coupling_coefficient(double A, const ModelParams& params);

struct CouplingTerms {
  double L22 = 0.0;   // A^{m+1}/(rho (m+1) Ae^m) - A/rho
  double G2 = 0.0;    // k(x)
  double dG2dx = 0.0; // k'(x)
  double B1 = 0.0;    // source of the phi equation
  double B2 = 0.0;    // source of the psi equation
};

CouplingTerms coupling_terms(const Primitive& w, double x,
                             const StiffnessProfile& profile,
                             const ModelParams& params);

}  // namespace hemogrp

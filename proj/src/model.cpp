#include "hemogrp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hemogrp {

ModelParams::ModelParams(double rho, double area_eq, double m)
    : rho_(rho), area_eq_(area_eq), m_(m), half_(m == 0.5) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(area_eq > 0.0)) throw std::invalid_argument("Ae must be positive");
  if (!(m > 0.0 && m < 2.0))
    throw std::invalid_argument("pressure exponent m must lie in (0, 2)");
  if (std::abs(3.0 * m - 2.0) < 1e-12)
    throw std::invalid_argument("pressure exponent m = 2/3 is singular");
}

double ModelParams::alpha_pow(double A) const {
  const double alpha = A / area_eq_;
  return half_ ? std::sqrt(alpha) : std::pow(alpha, m_);
}

Conserved to_conserved(const Primitive& w) { return {w.A, w.A * w.u, w.A * w.v}; }

Primitive to_primitive(const Conserved& U) {
  if (!(U.A > 0.0)) throw std::domain_error("non-positive area");
  return {U.A, U.q / U.A, U.r / U.A};
}

Slopes primitive_slopes(const Primitive& w, const Conserved& dU) {
  return {dU.A, (dU.q - w.u * dU.A) / w.A, (dU.r - w.v * dU.A) / w.A};
}

Conserved conserved_slopes(const Primitive& w, const Slopes& dw) {
  return {dw.A, w.A * dw.u + w.u * dw.A, w.A * dw.v + w.v * dw.A};
}

// ---------------------------------------------------------------------------

StiffnessProfile StiffnessProfile::constant(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("stiffness must be positive");
  StiffnessProfile p;
  p.kind_ = Kind::Constant;
  p.p_[0] = k;
  return p;
}

StiffnessProfile StiffnessProfile::sine_ramp(double x_start, double x_end,
                                             double k_left, double amplitude,
                                             double wavenumber,
                                             double k_right) {
  if (!(x_end > x_start)) throw std::invalid_argument("empty ramp interval");
  if (!(k_left > 0.0 && k_right > 0.0))
    throw std::invalid_argument("stiffness must be positive");
  const double k_end =
      k_left * (1.0 - amplitude * std::sin(wavenumber * (x_end - x_start)));
  if (std::abs(k_end - k_right) > 1e-9 * k_right)
    throw std::invalid_argument("sine ramp is discontinuous at its right end");
  for (int i = 0; i <= 64; ++i) {
    const double x = x_start + (x_end - x_start) * i / 64.0;
    if (k_left * (1.0 - amplitude * std::sin(wavenumber * (x - x_start))) <= 0.0)
      throw std::invalid_argument("sine ramp is not positive");
  }
  StiffnessProfile p;
  p.kind_ = Kind::SineRamp;
  p.p_ = {x_start, x_end, k_left, amplitude, wavenumber, k_right};
  return p;
}

StiffnessProfile StiffnessProfile::standard_ramp() {
  return sine_ramp(0.6, 0.8, 6.0, 0.5, 2.5 * std::numbers::pi, 3.0);
}

StiffnessProfile StiffnessProfile::sinusoidal(double base, double amplitude,
                                              double wavelength) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  if (!(base - std::abs(amplitude) > 0.0))
    throw std::invalid_argument("sinusoidal stiffness is not positive");
  StiffnessProfile p;
  p.kind_ = Kind::Sinusoidal;
  p.p_ = {base, amplitude, wavelength, 0.0, 0.0, 0.0};
  return p;
}

StiffnessProfile StiffnessProfile::piecewise(std::vector<double> xs,
                                             std::vector<double> ks) {
  if (xs.size() != ks.size() || xs.empty())
    throw std::invalid_argument("piecewise profile needs matching break points");
  if (!std::is_sorted(xs.begin(), xs.end()) ||
      std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw std::invalid_argument("break points must be strictly increasing");
  if (std::any_of(ks.begin(), ks.end(), [](double k) { return !(k > 0.0); }))
    throw std::invalid_argument("stiffness must be positive");
  StiffnessProfile p;
  p.kind_ = Kind::CustomPiecewise;
  p.xs_ = std::move(xs);
  p.ks_ = std::move(ks);
  return p;
}

std::string StiffnessProfile::name() const {
  switch (kind_) {
    case Kind::Constant: return "constant";
    case Kind::SineRamp: return "sine-ramp";
    case Kind::Sinusoidal: return "sinusoidal";
    case Kind::CustomPiecewise: return "custom-piecewise";
  }
  return "unknown";
}

double StiffnessProfile::value(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return p_[0];
    case Kind::SineRamp:
      if (x < p_[0]) return p_[2];
      if (x < p_[1]) return p_[2] * (1.0 - p_[3] * std::sin(p_[4] * (x - p_[0])));
      return p_[5];
    case Kind::Sinusoidal:
      return p_[0] + p_[1] * std::sin(2.0 * std::numbers::pi * x / p_[2]);
    case Kind::CustomPiecewise: {
      if (x < xs_.front()) return ks_.front();
      if (x >= xs_.back()) return ks_.back();
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const auto i = static_cast<std::size_t>(it - xs_.begin()) - 1;
      const double s = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
      return ks_[i] + s * (ks_[i + 1] - ks_[i]);
    }
  }
  return 0.0;
}

double StiffnessProfile::derivative(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::SineRamp:
      if (x < p_[0] || x >= p_[1]) return 0.0;
      return -p_[2] * p_[3] * p_[4] * std::cos(p_[4] * (x - p_[0]));
    case Kind::Sinusoidal: {
      const double w = 2.0 * std::numbers::pi / p_[2];
      return p_[1] * w * std::cos(w * x);
    }
    case Kind::CustomPiecewise: {
      if (x < xs_.front() || x >= xs_.back()) return 0.0;
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const auto i = static_cast<std::size_t>(it - xs_.begin()) - 1;
      return (ks_[i + 1] - ks_[i]) / (xs_[i + 1] - xs_[i]);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

namespace {
void require_positive(double A, double k) {
  if (!(A > 0.0)) throw std::domain_error("area must be positive");
  if (!(k > 0.0)) throw std::domain_error("stiffness must be positive");
}
}  // namespace

double pressure(double A, double k, const ModelParams& params) {
  require_positive(A, k);
  return k * (params.alpha_pow(A) - 1.0);
}

double wave_speed(double A, double k, const ModelParams& params) {
  require_positive(A, k);
  return std::sqrt(params.m() * k / params.rho() * params.alpha_pow(A));
}

double area_from_wavespeed(double c, double k, const ModelParams& params) {
  if (!(c > 0.0)) throw std::domain_error("wave speed must be positive");
  if (!(k > 0.0)) throw std::domain_error("stiffness must be positive");
  const double base = params.rho() * c * c / (params.m() * k);
  if (params.m() == 0.5) return params.area_eq() * base * base;
  return params.area_eq() * std::pow(base, 1.0 / params.m());
}

InvariantPair invariants(const Primitive& w, double k,
                         const ModelParams& params) {
  const double c = wave_speed(w.A, k, params);
  const double s = 2.0 / params.m() * c;
  return {w.u - s, w.u + s};
}

Primitive state_from_invariants(const InvariantPair& inv, double k,
                                const ModelParams& params) {
  if (!(inv.psi > inv.phi))
    throw std::domain_error("psi <= phi: vacuum-like state");
  const double c = params.m() * (inv.psi - inv.phi) / 4.0;
  return {area_from_wavespeed(c, k, params), 0.5 * (inv.psi + inv.phi), 0.0};
}

std::array<double, 2> flux(const Conserved& U, double k,
                           const ModelParams& params) {
  require_positive(U.A, k);
  const double m = params.m();
  const double pbar =
      m * k / (params.rho() * (m + 1.0)) * U.A * params.alpha_pow(U.A);
  return {U.q, U.q * U.q / U.A + pbar};
}

double coupling_coefficient(double A, const ModelParams& params) {
  const double m = params.m();
  return A * params.alpha_pow(A) / (params.rho() * (m + 1.0)) - A / params.rho();
}

CouplingTerms coupling_terms(const Primitive& w, double x,
                             const StiffnessProfile& profile,
                             const ModelParams& params) {
  if (!(w.A > 0.0)) throw std::domain_error("area must be positive");
  CouplingTerms t;
  t.L22 = coupling_coefficient(w.A, params);
  t.G2 = profile.value(x);
  t.dG2dx = profile.derivative(x);
  if (t.dG2dx != 0.0) {
    const double m = params.m();
    const double c = wave_speed(w.A, t.G2, params);
    const double base = m * t.G2 / params.rho();
    const double scale = t.dG2dx / (m * t.G2);
    t.B1 = scale * (base - w.u * c);
    t.B2 = scale * (base + w.u * c);
  }
  return t;
}

}  // namespace hemogrp

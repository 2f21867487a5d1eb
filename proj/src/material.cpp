#include "actigel/material.hpp"

#include <cmath>

#include "actigel/errors.hpp"

namespace actigel {

void MaterialParams::validate() const {
  if (!(c2 > 0.0)) throw DomainError("MaterialParams: c2 must be > 0");
  if (!(gamma_rot > 0.0)) throw DomainError("MaterialParams: gamma_rot must be > 0");
  if (!(mu > 0.0)) throw DomainError("MaterialParams: mu must be > 0");
  if (!(l1 > 0.0)) throw DomainError("MaterialParams: l1 must be > 0");
  if (!(a2 > 0.0)) throw DomainError("MaterialParams: a2 must be > 0");
}

double reduce_angle(double theta) {
  const double pi = M_PI;
  double r = std::fmod(theta, pi);
  if (r < 0.0) r += pi;
  return r;
}

double AnchoringData::theta1_reduced() const { return reduce_angle(theta1); }
double AnchoringData::theta2_reduced() const { return reduce_angle(theta2); }

LeslieCoefficients leslie_coefficients(double q, const MaterialParams& p) {
  const double xi = p.xi;
  const double G = p.gamma_rot;
  LeslieCoefficients c;
  c.alpha[0] = -(2.0 / 3.0) * q * q * (3.0 + 4.0 * q - 4.0 * q * q) * xi * xi / G;
  c.alpha[1] = (-(1.0 / 3.0) * q * (2.0 + q) * xi - q * q) / G;
  c.alpha[2] = (-(1.0 / 3.0) * q * (2.0 + q) * xi + q * q) / G;
  c.alpha[3] = (4.0 / 9.0) * (1.0 - q) * (1.0 - q) * xi * xi / G + 2.0 * p.mu;
  c.alpha[4] = ((1.0 / 3.0) * q * (4.0 - q) * xi * xi + (1.0 / 3.0) * q * (2.0 + q) * xi) / G;
  c.alpha[5] = ((1.0 / 3.0) * q * (4.0 - q) * xi * xi - (1.0 / 3.0) * q * (2.0 + q) * xi) / G;
  c.gamma1 = c.alpha[2] - c.alpha[1];
  c.gamma2 = c.alpha[1] + c.alpha[2];
  return c;
}

double f_A(const LeslieCoefficients& c, double theta) {
  const double s2 = std::sin(2.0 * theta);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  return 0.5 * c.alpha[0] * s2 * s2 + (c.alpha[4] - c.alpha[1]) * ct * ct +
         (c.alpha[2] + c.alpha[5]) * st * st + c.alpha[3];
}

double f_B(const LeslieCoefficients& c, double theta) {
  const double s2 = std::sin(2.0 * theta);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  return 0.5 * c.alpha[0] * s2 * s2 + (c.alpha[5] - c.alpha[2]) * ct * ct +
         (c.alpha[1] + c.alpha[4]) * st * st + c.alpha[3];
}

double f_A(double q, double theta, const MaterialParams& p) {
  return f_A(leslie_coefficients(q, p), theta);
}

double f_B(double q, double theta, const MaterialParams& p) {
  return f_B(leslie_coefficients(q, p), theta);
}

double bulk_energy_density(double q, const MaterialParams& p) {
  const double q2 = q * q;
  return -p.a2 * q2 / 8.0 + p.c2 * q2 * q2 / 64.0;
}

double active_coupling(double q, const MaterialParams& p) {
  return (p.xi * p.lambda1 * (1.0 - q * q) - p.zeta) * q;
}

LepParams lep_param_map(double q, const MaterialParams& p) {
  LepParams out;
  out.lambda1_lep = p.lambda1;
  out.zeta_lep = (p.zeta - p.xi * p.lambda1 * (1.0 - q * q)) * q;
  out.K = 2.0 * p.l1 * q * q;
  out.chi_lep = p.activity;
  return out;
}

NondimResult nondimensionalize(const DimensionalInputs& in) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(std::string("nondimensionalize: ") + name + " must be > 0");
  };
  positive(in.L, "L");
  positive(in.U, "U");
  positive(in.mu, "mu");
  positive(in.g0, "g0");
  positive(in.L1, "L1");
  positive(in.Gamma, "Gamma");
  positive(in.a2, "a2");
  positive(in.c2, "c2");

  NondimResult out;
  out.epsilon = std::cbrt(in.mu * in.U / in.g0);
  const double E = in.L1 / (out.epsilon * out.epsilon * in.L * in.L);

  MaterialParams& p = out.params;
  p.xi = in.xi;
  p.gamma_rot = in.Gamma * in.mu;
  p.mu = 1.0;  // viscosities are scaled by mu itself
  p.l1 = in.L1 / (out.epsilon * in.mu * in.U * in.L);
  p.a2 = in.a2 / E;
  p.c2 = in.c2 / E;
  // dchi_bar = (Gamma L / U) dchi absorbs the conversion factors; the
  // remaining couplings then scale as zeta_bar = zeta, lambda1_bar = lambda1/Gamma.
  const double dchi_bar = in.Gamma * in.L / in.U * in.delta_chi;
  p.activity = out.epsilon * dchi_bar / p.gamma_rot;
  p.zeta = in.zeta;
  p.lambda1 = in.lambda1 / in.Gamma;
  return out;
}

}  // namespace actigel

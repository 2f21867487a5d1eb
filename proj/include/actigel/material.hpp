#ifndef ACTIGEL_MATERIAL_HPP
#define ACTIGEL_MATERIAL_HPP

#include <array>

namespace actigel {

/** Dimensionless constitutive parameters of the thin-film model.
 *
 * The activity of the gel enters the leading-order equations only through
 * the group activity = eps*dchi/Gamma multiplied by lambda1 or by
 * (xi*lambda1*(1-q^2)-zeta)*q, so a single `activity` knob plus the two
 * active couplings is stored instead of (eps, dchi) separately.
 */
struct MaterialParams {
  double xi = 0.0;         // flow-alignment parameter
  double gamma_rot = 1.0;  // rotational mobility Gamma
  double mu = 1.0;         // isotropic viscosity
  double l1 = 1.0;         // elastic constant L1
  double a2 = 1.0;         // bulk coefficient a^2
  double c2 = 1.0;         // bulk coefficient c^2
  double activity = 0.0;   // eps*dchi/Gamma
  double lambda1 = 0.0;    // active molecular-field coupling
  double zeta = 0.0;       // active stress coupling

  bool passive() const {
    return activity * lambda1 == 0.0 && activity * zeta == 0.0;
  }
  // Throws DomainError when a positivity constraint is violated.
  void validate() const;
};

struct LeslieCoefficients {
  std::array<double, 6> alpha{};  // alpha1..alpha6 at alpha[0..5]
  double gamma1 = 0.0;            // alpha3 - alpha2
  double gamma2 = 0.0;            // alpha2 + alpha3 = alpha6 - alpha5
};

/** Director anchoring data: substrate (theta1, q1), free surface (theta2, q2).
 *
 * Angles are kept raw; the difference theta2-theta1 sets the director slope
 * so reduction must not happen on the solve path. Reduced values are for
 * reporting and winding arithmetic.
 */
struct AnchoringData {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;

  double theta1_reduced() const;  // in [0, pi)
  double theta2_reduced() const;
};

double reduce_angle(double theta);  // to [0, pi)

LeslieCoefficients leslie_coefficients(double q, const MaterialParams& p);

// Effective viscosity functions of the momentum closure (f_A) and the
// free-surface tangential-stress closure (f_B).
double f_A(const LeslieCoefficients& c, double theta);
double f_B(const LeslieCoefficients& c, double theta);
double f_A(double q, double theta, const MaterialParams& p);
double f_B(double q, double theta, const MaterialParams& p);

// Reduced Landau-de Gennes bulk density -a^2 q^2/8 + c^2 q^4/64.
// Diagnostics only; the reaction term in the q equation is kept as written
// in the model and has its equilibrium at q^2 = 2 a^2/c^2 instead.
double bulk_energy_density(double q, const MaterialParams& p);

// Coefficient of the active n(x)n stress divided by dchi:
// (xi*lambda1*(1-q^2) - zeta)*q.
double active_coupling(double q, const MaterialParams& p);

struct LepParams {
  double lambda1_lep;
  double zeta_lep;
  double K;
  double chi_lep;
};

// Ericksen -> Leslie-Ericksen-Parodi parameter map at constant q.
LepParams lep_param_map(double q, const MaterialParams& p);

struct DimensionalInputs {
  double L;          // lateral extent
  double U;          // velocity scale
  double mu;         // viscosity
  double g0;         // surface tension
  double L1;         // elastic constant
  double Gamma;      // rotational mobility
  double a2;         // bulk coefficient
  double c2;         // bulk coefficient
  double xi = 0.0;   // already dimensionless
  double lambda1 = 0.0;
  double zeta = 0.0;
  double delta_chi = 0.0;
};

struct NondimResult {
  double epsilon;
  MaterialParams params;
};

// eps^3 = mu U / g0 and the dimensionless groups that go with it.
// Convention for the activity split: dchi_bar = (Gamma L / U) dchi,
// zeta_bar = zeta, lambda1_bar = lambda1 / Gamma, which reproduces both
// scaling products zeta_bar*dchi_bar and lambda1_bar*dchi_bar.
NondimResult nondimensionalize(const DimensionalInputs& in);

}  // namespace actigel

#endif

#ifndef ACTIGEL_LEP_HPP
#define ACTIGEL_LEP_HPP

#include <cstddef>
#include <vector>

#include "actigel/material.hpp"
#include "actigel/profile.hpp"

namespace actigel::lep {

/** Leslie-Ericksen-Parodi thin-film model with active stress.
 *
 * The director angle is the only nematic field; the Leslie coefficients are
 * free inputs, so the model can be driven either standalone or from the
 * Ericksen parameter map at a fixed order parameter.
 */
struct LepModel {
  double K = 1.0;          // Frank constant (one-constant form)
  double zeta_lep = 0.0;   // active stress coupling
  double chi_lep = 0.0;    // activity scale
  LeslieCoefficients coef;
};

// Builds the model from the Ericksen material at constant q through the
// parameter map; Leslie coefficients are evaluated at that q.
LepModel from_material(double q_const, const MaterialParams& p);

// v1,3 from the momentum balance solved algebraically, with the active
// stress taken as -zeta^ELP dchi^ELP n(x)n so that the parameter map above
// reproduces the Ericksen closure at constant q.
double lep_velocity_gradient(double theta, double eta, double eta_xxx,
                             double x3, double theta2, const LepModel& m);

struct ColumnOptions {
  std::size_t n_nodes = 201;
  double tol = 1e-10;
};

struct ColumnReport {
  ColumnProfile profile;  // q left empty: the LEP film has no order parameter
  double residual_norm = 0.0;
  double defect_norm = 0.0;
  int iterations = 0;
};

ColumnProfile lep_column_bvp(double eta, double eta_xxx, double theta1,
                             double theta2, const LepModel& m,
                             const ColumnProfile* guess = nullptr,
                             const ColumnOptions& opts = {});
ColumnReport lep_column_report(double eta, double eta_xxx, double theta1,
                               double theta2, const LepModel& m,
                               const ColumnProfile* guess = nullptr,
                               const ColumnOptions& opts = {});

enum class ThirdDerivative { composed_centered, fourth_order };

struct EvolveOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t n_column_nodes = 101;
  ThirdDerivative third_derivative = ThirdDerivative::fourth_order;
  int snapshot_every = 0;
  double min_eta_floor = 1e-6;
};

// Film evolution driven by the theta-only columns; same splitting as the
// Ericksen film solver (capillary part implicit, active part explicit).
FilmTrajectory lep_evolve(const FilmState& film0, double theta1, double theta2,
                          const LepModel& m, const EvolveOptions& opts);

}  // namespace actigel::lep

#endif

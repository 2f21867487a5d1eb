#ifndef ACTIGEL_SMALLANGLE_HPP
#define ACTIGEL_SMALLANGLE_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "actigel/material.hpp"
#include "actigel/profile.hpp"

namespace actigel::smallangle {

/** Constant-angle solution of the matched-anchoring regime.
 *
 * theta1 solves gamma1 - gamma2 cos(2 theta) = 0 and q1 the algebraic
 * order-parameter balance; the two roots of the cosine are tagged plus
 * (theta = +acos(.)/2) and minus (theta = -acos(.)/2).
 */
struct ConstThetaSolution {
  enum class Branch { plus, minus };
  double q1 = 0.0;
  double theta1 = 0.0;
  Branch branch = Branch::plus;
};

// Matched-anchoring passive profile: theta constant, q from the c1 = 0
// quadrature with the thickness compatibility solved for c2.
ColumnProfile passive_small_angle_profile(const AnchoringData& bc, double eta,
                                          const MaterialParams& p,
                                          std::size_t n_nodes = 201,
                                          double tol = 1e-8);

// Both branches of the constant-(q, theta) active solution. Throws
// NoSolutionError for xi = 0, a negative q^2, or |cos(2 theta)| > 1.
std::array<ConstThetaSolution, 2> active_const_theta(const MaterialParams& p);

// Advection constant C(q1, theta1) of the modified thin-film equation,
// obtained by integrating the velocity-gradient closure at frozen (q, theta).
double advection_constant(const ConstThetaSolution& sol,
                          const MaterialParams& p);

// Conservative discrete right-hand side
//   -D1[(2/(3 f_A)) eta^3 D1 D1 D1 eta] + C D1(eta^2)
// with D1 the centered periodic difference.
std::vector<double> modified_thinfilm_rhs(const FilmState& state,
                                          const ConstThetaSolution& sol,
                                          const MaterialParams& p);

enum class Advection { upwind, centered };

struct EvolveOptions {
  double t_end = 1.0;
  double dt = 0.0;  // 0: CFL-style default from the advective speed
  double min_eta_floor = 1e-6;
  int snapshot_every = 0;
  Advection advection = Advection::upwind;
};

// Semi-implicit stepping: backward Euler on the fourth-order term with the
// mobility eta^3 lagged, explicit flux-form advection.
FilmTrajectory evolve_modified_thinfilm(const FilmState& state0,
                                        const ConstThetaSolution& sol,
                                        const MaterialParams& p,
                                        const EvolveOptions& opts);

}  // namespace actigel::smallangle

#endif

#ifndef ACTIGEL_LUBRICATION_HPP
#define ACTIGEL_LUBRICATION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "actigel/material.hpp"
#include "actigel/profile.hpp"

namespace actigel::lubrication {

/** Vertical velocity gradient v1,3 of the closed lubrication system.
 *
 * v1,3 = 2 eta,111 (eta - x3) / f_A(q,theta)
 *        - (activity / f_A) [ G(q) sin 2theta
 *            + ((gamma1 - gamma2 cos 2theta2)/f_B(q2,theta2)) G(q2) sin 2theta2 ]
 * with G(q) = (xi lambda1 (1-q^2) - zeta) q. The boundary term carries the
 * sign that makes the closure reproduce the free-surface tangential-stress
 * condition exactly at x3 = eta, q = q2, theta = theta2.
 */
double velocity_gradient(double q, double theta, double eta, double eta_xxx,
                         double x3, const AnchoringData& bc,
                         const MaterialParams& p);

enum class ColumnMode {
  full,             // solve coupled theta-q system
  constant_q,       // force q == q1 == q2, solve theta only
  forced_constant,  // force q == q1, theta == theta1; no solve
};

struct ColumnOptions {
  std::size_t n_nodes = 201;
  double tol = 1e-10;
  ColumnMode mode = ColumnMode::full;
};

struct ColumnReport {
  ColumnProfile profile;
  double residual_norm = 0.0;
  double defect_norm = 0.0;
  int iterations = 0;
};

// Per-column two-point BVP with v1,3 eliminated through velocity_gradient;
// Dirichlet anchoring at both faces, v1 rebuilt by trapezoidal integration.
ColumnProfile column_bvp(double eta, double eta_xxx, const AnchoringData& bc,
                         const MaterialParams& p,
                         const ColumnProfile* guess = nullptr,
                         const ColumnOptions& opts = {});
ColumnReport column_report(double eta, double eta_xxx, const AnchoringData& bc,
                           const MaterialParams& p,
                           const ColumnProfile* guess = nullptr,
                           const ColumnOptions& opts = {});

// Depth-integrated horizontal flux by composite Simpson on the column grid
// (order-consistent with the Lobatto column discretization).
double flux(const ColumnProfile& column);

struct LubricationField {
  FilmState film;
  std::vector<ColumnProfile> columns;
  std::vector<double> residuals;
};

enum class ThirdDerivative {
  composed_centered,  // D1 applied three times (order 2)
  fourth_order,       // 7-point antisymmetric stencil (order 4)
};

struct EvolveOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t n_column_nodes = 101;
  ColumnMode mode = ColumnMode::full;
  ThirdDerivative third_derivative = ThirdDerivative::fourth_order;
  int threads = 1;
  int snapshot_every = 0;  // 0 = none
  double min_eta_floor = 1e-6;
  // Optional per-node overrides of the free-surface order parameter and of
  // the activity; empty means the scalar values from bc / params apply.
  std::vector<double> q2_profile;
  std::vector<double> activity_profile;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> min_eta;
  std::vector<double> max_eta;
  std::vector<FilmState> snapshots;
  LubricationField final_field;
};

// Periodic third derivative of a film profile, either stencil.
std::vector<double> third_derivative(const FilmState& film, ThirdDerivative scheme);

// Method-of-lines film evolution: per step compute eta,111, solve every
// column (warm-started), assemble fluxes, then advance eta with the
// capillary part implicit. Mass is conserved by the divergence form.
Trajectory evolve(const FilmState& film0, const AnchoringData& bc,
                  const MaterialParams& p, const EvolveOptions& opts);

// Solves all columns of a film at fixed time (no advance); used to build a
// LubricationField for diagnostics.
LubricationField solve_columns(const FilmState& film, const AnchoringData& bc,
                               const MaterialParams& p,
                               const EvolveOptions& opts);

}  // namespace actigel::lubrication

#endif

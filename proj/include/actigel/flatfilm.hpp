#ifndef ACTIGEL_FLATFILM_HPP
#define ACTIGEL_FLATFILM_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "actigel/material.hpp"
#include "actigel/profile.hpp"

namespace actigel::flatfilm {

/** Constants of the separable flat-film first integral.
 *
 * residual_norm is the max violation of the two compatibility integrals at
 * (c1, c2); all_roots lists every root the multi-seed search found.
 */
struct CompatibilityRoots {
  double c1 = 0.0;
  double c2 = 0.0;
  double residual_norm = 0.0;
  std::vector<std::array<double, 2>> all_roots;
};

// Denominator under the square root of the separable q integral:
// 8 c1^2 log s - (1/L1)(a^2 s^2 - c^2 s^4/4) + 2 c2.
double comp_denominator(double s, double c1, double c2,
                        const MaterialParams& p);

// theta linear in x3, q == q0 (radicand root); requires q1 == q2 and a
// passive parameter set. Throws NoSolutionError when the radicand is
// negative and InvalidRegimeError when active terms are switched on.
ColumnProfile trivial_flat_solution(const AnchoringData& bc, double eta,
                                    const MaterialParams& p,
                                    std::size_t n_nodes = 201);

// x3 position where q reaches q_target along the separable solution.
double q_quadrature(double c1, double c2, double q_target,
                    const AnchoringData& bc, const MaterialParams& p,
                    double abs_tol = 1e-10);

// theta(q_target) - theta1 along the same solution.
double theta_quadrature(double c1, double c2, double q_target,
                        const AnchoringData& bc, const MaterialParams& p,
                        double abs_tol = 1e-10);

// Solves the two compatibility integrals for (c1, c2). Damped Newton over
// multiple seeds; returns the root nearest the trivial-slope seed and
// reports all found. Throws NoSolutionError when the search proves or
// exhausts nonexistence.
CompatibilityRoots solve_compatibility(const AnchoringData& bc, double eta,
                                       const MaterialParams& p,
                                       double tol = 1e-8);

// Reconstructs theta(x3), q(x3) from compatibility roots by inverting the
// quadrature map node by node; v1 == 0.
ColumnProfile compatibility_profile(const CompatibilityRoots& roots,
                                    const AnchoringData& bc, double eta,
                                    const MaterialParams& p,
                                    std::size_t n_nodes = 201);

struct ColumnReport {
  ColumnProfile profile;
  double residual_norm = 0.0;
  double defect_norm = 0.0;
  int iterations = 0;
};

// Coupled theta-q BVP of the active flat film (constant thickness, so the
// capillary forcing drops and only the active stress drives v1).
// Continuation in activity with step halving on failure.
ColumnProfile active_flatfilm_bvp(const AnchoringData& bc, double eta,
                                  const MaterialParams& p,
                                  std::size_t n_nodes = 201);
ColumnReport active_flatfilm_report(const AnchoringData& bc, double eta,
                                    const MaterialParams& p,
                                    std::size_t n_nodes = 201);

}  // namespace actigel::flatfilm

#endif

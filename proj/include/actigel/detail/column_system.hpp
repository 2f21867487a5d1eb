#ifndef ACTIGEL_DETAIL_COLUMN_SYSTEM_HPP
#define ACTIGEL_DETAIL_COLUMN_SYSTEM_HPP

#include <vector>

#include "actigel/collocation.hpp"
#include "actigel/material.hpp"

namespace actigel::detail {

// First-order form of the coupled column equations, components
// y = (theta, m, q, w) with the torque m = q^2 theta,3 and w = q,3.
collocation::OdeRhs make_column_rhs(double eta, double eta_xxx,
                                    const AnchoringData& bc,
                                    const MaterialParams& p);

// Constant-q reduction: y = (theta, m), q frozen at q_const.
collocation::OdeRhs make_theta_rhs_const_q(double q_const, double eta,
                                           double eta_xxx,
                                           const AnchoringData& bc,
                                           const MaterialParams& p);

// Cumulative trapezoid of the sampled gradient with v1(0) = 0.
std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                         const std::vector<double>& dv);

// Composite Simpson over a uniform grid (falls back to a trapezoid panel on
// the last interval when the node count is even).
double simpson(const std::vector<double>& x, const std::vector<double>& f);

}  // namespace actigel::detail

#endif

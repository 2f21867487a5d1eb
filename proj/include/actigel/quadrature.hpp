#ifndef ACTIGEL_QUADRATURE_HPP
#define ACTIGEL_QUADRATURE_HPP

#include <functional>

namespace actigel::quadrature {

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7-15 to absolute tolerance abs_tol.
double integrate(const Fn& f, double a, double b, double abs_tol,
                 int max_depth = 48);

/** Integral of w(s)/sqrt(D(s)) over [a, b].
 *
 * D may have a simple zero at either endpoint (turning point of the
 * underlying ODE); both halves are mapped with u^2 = |s - endpoint| which
 * regularizes the square-root singularity. A zero or sign change of D in
 * the interior throws TurningPointError carrying the offending abscissa.
 */
double integrate_inverse_sqrt(const Fn& D, const Fn& w, double a, double b,
                              double abs_tol);

// Locates the first interior zero of D on (a, b), if any, by sampling and
// bisection; returns true and sets s_zero when found.
bool find_interior_zero(const Fn& D, double a, double b, double& s_zero);

}  // namespace actigel::quadrature

#endif

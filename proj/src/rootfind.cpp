#include "actigel/rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace actigel::rootfind {

double brent(const std::function<double(double)>& f, double lo, double hi,
             double xtol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw std::invalid_argument("brent: interval does not bracket a root");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q_, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q_ = 1.0 - s;
      } else {
        q_ = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q_ * (q_ - r) - (b - a) * (r - 1.0));
        q_ = (q_ - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q_ = -q_;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q_ - std::abs(tol1 * q_), std::abs(e * q_))) {
        e = d;
        d = p / q_;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
  }
  return b;
}

}  // namespace actigel::rootfind

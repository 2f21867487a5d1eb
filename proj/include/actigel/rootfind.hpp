#ifndef ACTIGEL_ROOTFIND_HPP
#define ACTIGEL_ROOTFIND_HPP

#include <functional>

namespace actigel::rootfind {

// Brent's method on a bracketing interval [lo, hi]; f(lo) and f(hi) must
// have opposite signs (or one of them be zero).
double brent(const std::function<double(double)>& f, double lo, double hi,
             double xtol = 1e-14, int max_iter = 200);

}  // namespace actigel::rootfind

#endif

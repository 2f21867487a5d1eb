#include "actigel/quadrature.hpp"

#include <cmath>
#include <limits>

#include "actigel/errors.hpp"

namespace actigel::quadrature {

namespace {

// Kronrod-15 abscissae/weights and the embedded Gauss-7 weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const Fn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - hl * kXgk[i]);
    fv[14 - i] = f(c + hl * kXgk[i]);
  }
  fv[7] = f(c);
  double kron = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    kron += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  return {kron * hl, std::abs((kron - gauss) * hl)};
}

double integrate_adaptive(const Fn& f, double a, double b, double abs_tol,
                          int depth, int max_depth) {
  const GkResult r = gk15(f, a, b);
  if (r.error <= abs_tol || depth >= max_depth) return r.value;
  const double c = 0.5 * (a + b);
  return integrate_adaptive(f, a, c, 0.5 * abs_tol, depth + 1, max_depth) +
         integrate_adaptive(f, c, b, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const Fn& f, double a, double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  return integrate_adaptive(f, a, b, abs_tol, 0, max_depth);
}

bool find_interior_zero(const Fn& D, double a, double b, double& s_zero) {
  const int n = 512;
  const double h = (b - a) / n;
  double sl = a + h;
  double dl = D(sl);
  if (dl <= 0.0) {
    s_zero = sl;
    return true;
  }
  for (int i = 2; i < n; ++i) {
    const double sr = a + i * h;
    const double dr = D(sr);
    if (dr <= 0.0) {
      // bisect down to the crossing
      double lo = sl, hi = sr;
      for (int k = 0; k < 80 && hi - lo > 1e-15 * (b - a); ++k) {
        const double mid = 0.5 * (lo + hi);
        (D(mid) > 0.0 ? lo : hi) = mid;
      }
      s_zero = 0.5 * (lo + hi);
      return true;
    }
    sl = sr;
    dl = dr;
  }
  return false;
}

double integrate_inverse_sqrt(const Fn& D, const Fn& w, double a, double b,
                              double abs_tol) {
  if (b <= a) return 0.0;

  double s_bad;
  if (find_interior_zero(D, a, b, s_bad))
    throw TurningPointError(s_bad,
                            "quadrature denominator vanishes inside the interval");

  auto integrand = [&](double s) {
    const double d = D(s);
    if (d <= 0.0)
      throw TurningPointError(s, "quadrature denominator vanished during evaluation");
    return w(s) / std::sqrt(d);
  };

  // Map both halves with u^2 = distance to the endpoint; a simple endpoint
  // zero of D then leaves a bounded integrand.
  const double m = 0.5 * (a + b);
  auto left = [&](double u) { return 2.0 * u * integrand(a + u * u); };
  auto right = [&](double u) { return 2.0 * u * integrand(b - u * u); };
  const double ul = std::sqrt(m - a);
  const double ur = std::sqrt(b - m);
  return integrate(left, 0.0, ul, 0.5 * abs_tol) +
         integrate(right, 0.0, ur, 0.5 * abs_tol);
}

}  // namespace actigel::quadrature

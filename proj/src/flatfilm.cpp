#include "actigel/flatfilm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "actigel/collocation.hpp"
#include "actigel/detail/column_system.hpp"
#include "actigel/errors.hpp"
#include "actigel/lubrication.hpp"
#include "actigel/quadrature.hpp"
#include "actigel/rootfind.hpp"

namespace actigel::flatfilm {

namespace {

// Bulk potential term g(s) = a^2 s^2 - c^2 s^4 / 4 of the first integral.
double bulk_g(double s, const MaterialParams& p) {
  return p.a2 * s * s - p.c2 * s * s * s * s / 4.0;
}

struct QuadProblem {
  double qlo, qhi;  // ordered endpoints of the q interval
  double q_anchor;  // q1: the substrate value the first integral is anchored to
  const MaterialParams* p;

  // D anchored at q_anchor with D(q_anchor) = d0 (= q,3(0)^2).
  double D(double s, double c1, double d0) const {
    return d0 + 8.0 * c1 * c1 * std::log(s / q_anchor) -
           (bulk_g(s, *p) - bulk_g(q_anchor, *p)) / p->l1;
  }

  // Smallest d0 keeping D >= 0 on [qlo, qhi] (sampled bound).
  double min_d0(double c1) const {
    double m = 0.0;
    const int n = 1024;
    for (int i = 0; i <= n; ++i) {
      const double s = qlo + (qhi - qlo) * i / n;
      const double rest = 8.0 * c1 * c1 * std::log(s / q_anchor) -
                          (bulk_g(s, *p) - bulk_g(q_anchor, *p)) / p->l1;
      m = std::max(m, -rest);
    }
    return m;
  }

  double thickness_integral(double c1, double d0, double tol) const {
    auto Df = [&](double s) { return D(s, c1, d0); };
    auto one = [](double) { return 1.0; };
    return quadrature::integrate_inverse_sqrt(Df, one, qlo, qhi, tol);
  }

  double angle_integral(double c1, double d0, double tol) const {
    auto Df = [&](double s) { return D(s, c1, d0); };
    auto w = [](double s) { return 1.0 / (s * s); };
    return quadrature::integrate_inverse_sqrt(Df, w, qlo, qhi, tol);
  }
};

double c2_from_d0(double c1, double d0, double q1, const MaterialParams& p) {
  return 0.5 * (d0 - 8.0 * c1 * c1 * std::log(q1) + bulk_g(q1, p) / p.l1);
}

double d0_from_c2(double c1, double c2, double q1, const MaterialParams& p) {
  return 2.0 * c2 + 8.0 * c1 * c1 * std::log(q1) - bulk_g(q1, p) / p.l1;
}

// Coarse RK4 shooting on the separable-family ODE
// q'' = 4 c1^2 / q - (a^2 q - c^2 q^3/2)/L1 to estimate q'(0).
std::optional<double> shoot_qp0(double c1, const AnchoringData& bc, double eta,
                                const MaterialParams& p) {
  auto terminal_q = [&](double qp0) -> double {
    double q = bc.q1, w = qp0;
    const int n = 96;
    const double h = eta / n;
    auto acc = [&](double qq) {
      if (qq < 1e-8) return 1e8;
      return 4.0 * c1 * c1 / qq - (p.a2 * qq - p.c2 * qq * qq * qq / 2.0) / p.l1;
    };
    for (int i = 0; i < n; ++i) {
      const double k1q = w, k1w = acc(q);
      const double k2q = w + 0.5 * h * k1w, k2w = acc(q + 0.5 * h * k1q);
      const double k3q = w + 0.5 * h * k2w, k3w = acc(q + 0.5 * h * k2q);
      const double k4q = w + h * k3w, k4w = acc(q + h * k3q);
      q += h / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
      w += h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
      if (!std::isfinite(q) || std::abs(q) > 1e6) return 1e6;
    }
    return q;
  };
  const double dir = bc.q2 > bc.q1 ? 1.0 : -1.0;
  const double scale = std::abs(bc.q2 - bc.q1) / eta + 1e-3;
  double prev_s = 0.0, prev_f = terminal_q(0.0) - bc.q2;
  for (double mult : {0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0}) {
    const double s = dir * mult * scale;
    const double f = terminal_q(s) - bc.q2;
    if (prev_f * f <= 0.0 && std::isfinite(f)) {
      double lo = prev_s, hi = s;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        if ((terminal_q(mid) - bc.q2) * prev_f > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_s = s;
    prev_f = f;
  }
  return std::nullopt;
}

}  // namespace

double comp_denominator(double s, double c1, double c2,
                        const MaterialParams& p) {
  return 8.0 * c1 * c1 * std::log(s) - bulk_g(s, p) / p.l1 + 2.0 * c2;
}

ColumnProfile trivial_flat_solution(const AnchoringData& bc, double eta,
                                    const MaterialParams& p,
                                    std::size_t n_nodes) {
  p.validate();
  if (!p.passive())
    throw InvalidRegimeError(
        "trivial flat solution: active terms forbid the linear ansatz");
  if (std::abs(bc.q1 - bc.q2) > 1e-12 * std::max(1.0, std::abs(bc.q1)))
    throw InvalidRegimeError("trivial flat solution requires q1 == q2");

  const double slope = (bc.theta2 - bc.theta1) / eta;
  const double radicand = 2.0 * p.a2 / p.c2 - 8.0 * p.l1 / p.c2 * slope * slope;
  if (radicand < 0.0)
    throw NoSolutionError("trivial flat solution: negative radicand");
  const double q0 = std::sqrt(radicand);

  ColumnProfile col;
  col.eta = eta;
  col.x3 = uniform_grid(eta, n_nodes);
  col.theta.resize(n_nodes);
  col.q.assign(n_nodes, q0);
  col.v1.assign(n_nodes, 0.0);
  for (std::size_t i = 0; i < n_nodes; ++i)
    col.theta[i] = bc.theta1 + slope * col.x3[i];
  col.theta.back() = bc.theta2;
  return col;
}

double q_quadrature(double c1, double c2, double q_target,
                    const AnchoringData& bc, const MaterialParams& p,
                    double abs_tol) {
  if (q_target == bc.q1) return 0.0;
  QuadProblem prob{std::min(bc.q1, q_target), std::max(bc.q1, q_target), bc.q1, &p};
  const double d0 = d0_from_c2(c1, c2, bc.q1, p);
  return prob.thickness_integral(c1, d0, abs_tol);
}

double theta_quadrature(double c1, double c2, double q_target,
                        const AnchoringData& bc, const MaterialParams& p,
                        double abs_tol) {
  if (q_target == bc.q1 || c1 == 0.0) return 0.0;
  QuadProblem prob{std::min(bc.q1, q_target), std::max(bc.q1, q_target), bc.q1, &p};
  const double d0 = d0_from_c2(c1, c2, bc.q1, p);
  return c1 * prob.angle_integral(c1, d0, abs_tol);
}

CompatibilityRoots solve_compatibility(const AnchoringData& bc, double eta,
                                       const MaterialParams& p, double tol) {
  p.validate();
  if (!p.passive())
    throw InvalidRegimeError("compatibility conditions are a passive-film construct");
  if (bc.q1 <= 0.0 || bc.q2 <= 0.0)
    throw DomainError("solve_compatibility: anchoring q values must be positive");
  if (bc.q1 == bc.q2)
    throw InvalidRegimeError("solve_compatibility: q1 == q2 is the trivial regime");

  const double dtheta = bc.theta2 - bc.theta1;
  QuadProblem prob{std::min(bc.q1, bc.q2), std::max(bc.q1, bc.q2), bc.q1, &p};
  const double inner_tol = std::min(1e-12, 0.01 * tol);

  auto evaluate = [&](double c1, double d0,
                      double& f1, double& f2) -> bool {
    if (d0 < 0.0) return false;
    try {
      f2 = prob.thickness_integral(c1, d0, inner_tol) - eta;
      f1 = c1 * prob.angle_integral(c1, d0, inner_tol) - dtheta;
      return std::isfinite(f1) && std::isfinite(f2);
    } catch (const TurningPointError&) {
      return false;
    }
  };

  CompatibilityRoots out;
  std::vector<std::array<double, 2>> roots_cd;  // (c1, d0)

  // theta2 == theta1 forces c1 = 0 (the angle integrand is positive), and
  // the problem reduces to one thickness equation in d0.
  if (std::abs(dtheta) < 1e-14) {
    const double dmin = prob.min_d0(0.0);
    auto thick = [&](double d0) {
      return prob.thickness_integral(0.0, d0, inner_tol) - eta;
    };
    const double lo = dmin + std::max(1e-13, 1e-12 * dmin);
    double flo;
    try {
      flo = thick(lo);
    } catch (const TurningPointError&) {
      throw NoSolutionError("compatibility: thickness integral infeasible");
    }
    if (flo < 0.0)
      throw NoSolutionError(
          "compatibility: film too thick for the denominator to stay positive; "
          "only the trivial solution exists");
    // expand until the integral drops below eta
    double hi_ = std::max(lo * 2.0, 1.0);
    while (thick(hi_) > 0.0 && hi_ < 1e12) hi_ *= 4.0;
    if (hi_ >= 1e12)
      throw NoSolutionError("compatibility: no d0 matches the film thickness");
    const double d0 = rootfind::brent(thick, lo, hi_, 1e-15);
    roots_cd.push_back({0.0, d0});
  } else {
    // damped Newton over a seed family around the trivial slope
    const double qbar = 0.5 * (bc.q1 + bc.q2);
    const double c1_seed = qbar * qbar * dtheta / eta;
    double d0_seed = std::pow((bc.q2 - bc.q1) / eta, 2);
    if (auto qp0 = shoot_qp0(c1_seed, bc, eta, p)) d0_seed = (*qp0) * (*qp0);
    if (d0_seed <= 0.0) d0_seed = 1e-3;

    for (double mc : {1.0, 0.5, 2.0, 4.0}) {
      for (double md : {1.0, 0.5, 2.0, 8.0}) {
        double c1 = mc * c1_seed;
        double d0 = std::max(md * d0_seed, prob.min_d0(c1) * (1.0 + 1e-10) + 1e-13);
        double f1, f2;
        if (!evaluate(c1, d0, f1, f2)) continue;
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
          double nrm = std::max(std::abs(f1), std::abs(f2));
          if (nrm <= tol * 1e-1 || nrm <= 1e-9) {
            converged = true;
            break;
          }
          // forward-difference Jacobian
          const double dc = 1e-7 * std::max(1.0, std::abs(c1));
          const double dd = 1e-7 * std::max(1e-3, std::abs(d0));
          double f1c, f2c, f1d, f2d;
          if (!evaluate(c1 + dc, d0, f1c, f2c)) break;
          if (!evaluate(c1, d0 + dd, f1d, f2d)) break;
          const double j11 = (f1c - f1) / dc, j12 = (f1d - f1) / dd;
          const double j21 = (f2c - f2) / dc, j22 = (f2d - f2) / dd;
          const double det = j11 * j22 - j12 * j21;
          if (std::abs(det) < 1e-300) break;
          const double sc1 = (-f1 * j22 + f2 * j12) / det;
          const double sd0 = (-j11 * f2 + j21 * f1) / det;
          double lambda = 1.0;
          bool stepped = false;
          while (lambda > 1.0 / 1024.0) {
            double c1t = c1 + lambda * sc1;
            double d0t = d0 + lambda * sd0;
            double f1t, f2t;
            if (evaluate(c1t, d0t, f1t, f2t) &&
                std::max(std::abs(f1t), std::abs(f2t)) <
                    (1.0 - 0.25 * lambda) * nrm) {
              c1 = c1t;
              d0 = d0t;
              f1 = f1t;
              f2 = f2t;
              stepped = true;
              break;
            }
            lambda *= 0.5;
          }
          if (!stepped) break;
        }
        if (converged) {
          bool dup = false;
          for (const auto& r : roots_cd)
            if (std::abs(r[0] - c1) < 1e-6 * (1.0 + std::abs(c1)) &&
                std::abs(r[1] - d0) < 1e-6 * (1.0 + std::abs(d0)))
              dup = true;
          if (!dup) roots_cd.push_back({c1, d0});
        }
      }
    }
    if (roots_cd.empty())
      throw NoSolutionError(
          "compatibility: no (c1, c2) root found from any seed");
  }

  // nearest root to the trivial-slope seed, in (c1, c2) coordinates
  const double qbar = 0.5 * (bc.q1 + bc.q2);
  const double c1_ref = qbar * qbar * dtheta / eta;
  const double c2_ref = c2_from_d0(c1_ref, std::pow((bc.q2 - bc.q1) / eta, 2),
                                   bc.q1, p);
  double best = 1e300;
  for (const auto& r : roots_cd) {
    const double c2v = c2_from_d0(r[0], r[1], bc.q1, p);
    out.all_roots.push_back({r[0], c2v});
    const double dist = std::hypot(r[0] - c1_ref, c2v - c2_ref);
    if (dist < best) {
      best = dist;
      out.c1 = r[0];
      out.c2 = c2v;
    }
  }
  double f1 = 0.0, f2 = 0.0;
  evaluate(out.c1, d0_from_c2(out.c1, out.c2, bc.q1, p), f1, f2);
  out.residual_norm = std::max(std::abs(f1), std::abs(f2));
  return out;
}

ColumnProfile compatibility_profile(const CompatibilityRoots& roots,
                                    const AnchoringData& bc, double eta,
                                    const MaterialParams& p,
                                    std::size_t n_nodes) {
  ColumnProfile col;
  col.eta = eta;
  col.x3 = uniform_grid(eta, n_nodes);
  col.theta.resize(n_nodes);
  col.q.resize(n_nodes);
  col.v1.assign(n_nodes, 0.0);

  const double qlo = std::min(bc.q1, bc.q2);
  const double qhi = std::max(bc.q1, bc.q2);
  col.theta[0] = bc.theta1;
  col.q[0] = bc.q1;
  double q_prev = bc.q1;
  for (std::size_t i = 1; i < n_nodes; ++i) {
    const double target_x = col.x3[i];
    auto offset = [&](double qq) {
      return q_quadrature(roots.c1, roots.c2, qq, bc, p, 1e-12) - target_x;
    };
    // q is monotone from q1 towards q2 along the column
    double a = q_prev, b = bc.q2;
    double fa = offset(a), fb = offset(b);
    double qi;
    if (fa * fb > 0.0) {
      qi = std::abs(fa) < std::abs(fb) ? a : b;  // beyond-range guard at eta
    } else {
      qi = rootfind::brent(offset, std::min(a, b), std::max(a, b), 1e-14);
    }
    qi = std::clamp(qi, qlo, qhi);
    col.q[i] = qi;
    col.theta[i] = bc.theta1 + theta_quadrature(roots.c1, roots.c2, qi, bc, p, 1e-12);
    q_prev = qi;
  }
  return col;
}

ColumnReport active_flatfilm_report(const AnchoringData& bc, double eta,
                                    const MaterialParams& p,
                                    std::size_t n_nodes) {
  p.validate();
  {
    const double fb2 = f_B(bc.q2, bc.theta2, p);
    if (std::abs(fb2) < 1e-12)
      throw BoundaryClosureSingularityError(
          "active flat film: f_B(q2, theta2) vanishes");
  }

  // passive warm start: trivial when admissible, else the compatibility
  // profile, else straight interpolation of the boundary data
  std::vector<double> mesh = uniform_grid(eta, n_nodes);
  ColumnProfile guess;
  bool have_guess = false;
  if (std::abs(bc.q1 - bc.q2) < 1e-12) {
    try {
      MaterialParams pp = p;
      pp.activity = 0.0;
      guess = trivial_flat_solution(bc, eta, pp, n_nodes);
      have_guess = true;
    } catch (const SolverError&) {
    }
  }
  if (!have_guess) {
    try {
      MaterialParams pp = p;
      pp.activity = 0.0;
      auto roots = solve_compatibility(bc, eta, pp);
      guess = compatibility_profile(roots, bc, eta, pp, n_nodes);
      have_guess = true;
    } catch (const SolverError&) {
    }
  }
  if (!have_guess) {
    guess.eta = eta;
    guess.x3 = mesh;
    guess.theta.resize(n_nodes);
    guess.q.resize(n_nodes);
    guess.v1.assign(n_nodes, 0.0);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      const double t = mesh[i] / eta;
      guess.theta[i] = bc.theta1 + (bc.theta2 - bc.theta1) * t;
      guess.q[i] = bc.q1 + (bc.q2 - bc.q1) * t;
    }
  }

  lubrication::ColumnOptions copts;
  copts.n_nodes = n_nodes;
  copts.mode = lubrication::ColumnMode::full;

  // continuation in activity with step refinement on failure
  const double target = p.activity;
  for (int stages : {1, 4, 16, 64}) {
    ColumnProfile warm = guess;
    try {
      lubrication::ColumnReport rep;
      for (int k = 1; k <= stages; ++k) {
        MaterialParams pk = p;
        pk.activity = target * k / stages;
        rep = lubrication::column_report(eta, 0.0, bc, pk, &warm, copts);
        warm = rep.profile;
      }
      return ColumnReport{rep.profile, rep.residual_norm, rep.defect_norm,
                          rep.iterations};
    } catch (const NonConvergenceError&) {
      if (stages == 64) throw;
    }
  }
  throw NonConvergenceError("active flat film: continuation exhausted", {});
}

ColumnProfile active_flatfilm_bvp(const AnchoringData& bc, double eta,
                                  const MaterialParams& p,
                                  std::size_t n_nodes) {
  return active_flatfilm_report(bc, eta, p, n_nodes).profile;
}

}  // namespace actigel::flatfilm

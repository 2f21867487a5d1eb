#include "actigel/smallangle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "actigel/errors.hpp"
#include "actigel/flatfilm.hpp"

namespace actigel::smallangle {

ColumnProfile passive_small_angle_profile(const AnchoringData& bc, double eta,
                                          const MaterialParams& p,
                                          std::size_t n_nodes, double tol) {
  p.validate();
  if (!p.passive())
    throw InvalidRegimeError(
        "small-angle profile: theta = const is not a solution of the active system");
  if (std::abs(bc.theta2 - bc.theta1) > 1e-8)
    throw InvalidRegimeError("small-angle profile requires theta2 == theta1");

  if (std::abs(bc.q2 - bc.q1) < 1e-14) {
    // degenerate limit: constant order parameter
    ColumnProfile col;
    col.eta = eta;
    col.x3 = uniform_grid(eta, n_nodes);
    col.theta.assign(n_nodes, bc.theta1);
    col.q.assign(n_nodes, bc.q1);
    col.v1.assign(n_nodes, 0.0);
    return col;
  }

  // c1 = 0 specialisation: one thickness condition fixes c2
  AnchoringData flat = bc;
  flat.theta2 = flat.theta1;
  auto roots = flatfilm::solve_compatibility(flat, eta, p, tol);
  ColumnProfile col = flatfilm::compatibility_profile(roots, flat, eta, p, n_nodes);
  for (auto& t : col.theta) t = bc.theta1;
  return col;
}

std::array<ConstThetaSolution, 2> active_const_theta(const MaterialParams& p) {
  p.validate();
  if (p.xi == 0.0)
    throw NoSolutionError("constant-theta active solution does not exist for xi = 0");
  const double q_sq = 2.0 * p.a2 / p.c2 + 2.0 * p.activity * p.lambda1 / p.c2;
  if (q_sq < 0.0)
    throw NoSolutionError("constant-theta active solution: q^2 < 0");
  const double q = std::sqrt(q_sq);
  const double cos2t = -3.0 / p.xi + 6.0 / ((2.0 + q) * p.xi);
  if (std::abs(cos2t) > 1.0)
    throw NoSolutionError("constant-theta active solution: |cos(2 theta)| > 1");
  const double t = 0.5 * std::acos(cos2t);
  return {ConstThetaSolution{q, t, ConstThetaSolution::Branch::plus},
          ConstThetaSolution{q, -t, ConstThetaSolution::Branch::minus}};
}

double advection_constant(const ConstThetaSolution& sol,
                          const MaterialParams& p) {
  const LeslieCoefficients lc = leslie_coefficients(sol.q1, p);
  const double fa = f_A(lc, sol.theta1);
  if (std::abs(fa) < 1e-12 * (1.0 + std::abs(lc.alpha[3])))
    throw ViscositySingularityError("advection constant: f_A(q1, theta1) = 0");
  const double fb = f_B(lc, sol.theta1);
  const double torque = lc.gamma1 - lc.gamma2 * std::cos(2.0 * sol.theta1);
  return p.activity / (2.0 * fa) * active_coupling(sol.q1, p) *
         std::sin(2.0 * sol.theta1) * (1.0 + torque / fb);
}

namespace {

// centered periodic first difference
std::vector<double> d1(const std::vector<double>& u, double h) {
  const std::size_t n = u.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = (u[(i + 1) % n] - u[(i + n - 1) % n]) / (2.0 * h);
  return out;
}

}  // namespace

std::vector<double> modified_thinfilm_rhs(const FilmState& state,
                                          const ConstThetaSolution& sol,
                                          const MaterialParams& p) {
  const double fa = f_A(sol.q1, sol.theta1, p);
  if (std::abs(fa) < 1e-12)
    throw ViscositySingularityError("modified thin film: f_A(q1, theta1) = 0");
  const double mob = 2.0 / (3.0 * fa);
  const double C = advection_constant(sol, p);
  const double h = state.spacing();
  const std::size_t n = state.size();

  const std::vector<double> e3 = d1(d1(d1(state.eta, h), h), h);
  std::vector<double> cap_flux(n), eta_sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    cap_flux[i] = mob * state.eta[i] * state.eta[i] * state.eta[i] * e3[i];
    eta_sq[i] = state.eta[i] * state.eta[i];
  }
  const std::vector<double> div_cap = d1(cap_flux, h);
  const std::vector<double> div_sq = d1(eta_sq, h);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = -div_cap[i] + C * div_sq[i];
  return rhs;
}

FilmTrajectory evolve_modified_thinfilm(const FilmState& state0,
                                        const ConstThetaSolution& sol,
                                        const MaterialParams& p,
                                        const EvolveOptions& opts) {
  const double fa = f_A(sol.q1, sol.theta1, p);
  if (std::abs(fa) < 1e-12)
    throw ViscositySingularityError("modified thin film: f_A(q1, theta1) = 0");
  const double mob_coeff = 2.0 / (3.0 * fa);
  const double C = advection_constant(sol, p);

  FilmState film = state0;
  const std::size_t n = film.size();
  const double h = film.spacing();

  double dt = opts.dt;
  if (dt <= 0.0) {
    double amax = 1e-12;
    for (double e : film.eta) amax = std::max(amax, std::abs(2.0 * C * e));
    dt = std::min(opts.t_end / 64.0, 0.4 * h / amax);
  }
  const long steps = std::max(1L, std::lround(opts.t_end / dt));
  dt = opts.t_end / static_cast<double>(steps);

  FilmTrajectory traj;
  auto record = [&](const FilmState& f) {
    traj.times.push_back(f.time);
    traj.mass.push_back(f.mass());
    traj.min_eta.push_back(f.min_eta());
    traj.max_eta.push_back(f.max_eta());
  };
  record(film);
  if (opts.snapshot_every > 0) traj.snapshots.push_back(film);

  Eigen::SparseMatrix<double> M(static_cast<int>(n), static_cast<int>(n));
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool pattern_set = false;
  auto wrap = [&](std::ptrdiff_t i) {
    return static_cast<int>((i % static_cast<std::ptrdiff_t>(n) + n) % n);
  };
  // composed-D1 third derivative weights over offsets -3..3
  const double c3 = 1.0 / (8.0 * h * h * h);
  const double w3[7] = {-c3, 0.0, 3.0 * c3, 0.0, -3.0 * c3, 0.0, c3};

  std::vector<Eigen::Triplet<double>> trips;
  std::vector<double> adv(n), g_face(n);
  Eigen::VectorXd rhs(static_cast<int>(n));

  for (long step = 0; step < steps; ++step) {
    // explicit conservative advection, flux g = -C eta^2 at faces
    for (std::size_t i = 0; i < n; ++i) {
      const double el = film.eta[i];
      const double er = film.eta[(i + 1) % n];
      if (opts.advection == Advection::centered) {
        g_face[i] = -C * 0.5 * (el * el + er * er);
      } else {
        const double speed = -2.0 * C * 0.5 * (el + er);
        const double eface = speed > 0.0 ? el : er;
        g_face[i] = -C * eface * eface;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      adv[i] = -(g_face[i] - g_face[(i + n - 1) % n]) / h;

    // implicit capillary operator with lagged mobility
    trips.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const auto si = static_cast<std::ptrdiff_t>(i);
      trips.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const std::ptrdiff_t m = si + sgn;
        const double d1w = sgn / (2.0 * h);
        const double em = film.eta[wrap(m)];
        const double phi = mob_coeff * em * em * em;
        for (int off = -3; off <= 3; ++off) {
          if (w3[off + 3] == 0.0) continue;
          trips.emplace_back(static_cast<int>(i), wrap(m + off),
                             dt * d1w * phi * w3[off + 3]);
        }
      }
    }
    M.setFromTriplets(trips.begin(), trips.end());
    if (!pattern_set) {
      lu.analyzePattern(M);
      pattern_set = true;
    }
    lu.factorize(M);
    if (lu.info() != Eigen::Success)
      throw NonConvergenceError("modified thin film: implicit step failed", {});
    for (std::size_t i = 0; i < n; ++i)
      rhs[static_cast<int>(i)] = film.eta[i] + dt * adv[i];
    Eigen::VectorXd next = lu.solve(rhs);
    for (std::size_t i = 0; i < n; ++i) film.eta[i] = next[static_cast<int>(i)];
    film.time += dt;

    if (film.min_eta() < opts.min_eta_floor)
      throw ThicknessBlowdownError("modified thin film: thickness below floor",
                                   film.time, film.min_eta());
    record(film);
    if (opts.snapshot_every > 0 && (step + 1) % opts.snapshot_every == 0)
      traj.snapshots.push_back(film);
  }
  traj.final_film = film;
  return traj;
}

}  // namespace actigel::smallangle

#include "actigel/lep.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "actigel/collocation.hpp"
#include "actigel/detail/column_system.hpp"
#include "actigel/errors.hpp"

namespace actigel::lep {

LepModel from_material(double q_const, const MaterialParams& p) {
  const LepParams map = lep_param_map(q_const, p);
  LepModel m;
  m.K = map.K;
  m.zeta_lep = map.zeta_lep;
  m.chi_lep = map.chi_lep;
  m.coef = leslie_coefficients(q_const, p);
  return m;
}

double lep_velocity_gradient(double theta, double eta, double eta_xxx,
                             double x3, double theta2, const LepModel& m) {
  const double fa = f_A(m.coef, theta);
  if (std::abs(fa) < 1e-12 * (1.0 + std::abs(m.coef.alpha[3])))
    throw ViscositySingularityError("lep velocity gradient: f_A(theta) = 0");
  double v13 = 2.0 * eta_xxx * (eta - x3) / fa;
  const double act = m.zeta_lep * m.chi_lep;
  if (act != 0.0) {
    const double fb2 = f_B(m.coef, theta2);
    if (std::abs(fb2) < 1e-12 * (1.0 + std::abs(m.coef.alpha[3])))
      throw BoundaryClosureSingularityError("lep velocity gradient: f_B(theta2) = 0");
    const double torque2 =
        m.coef.gamma1 - m.coef.gamma2 * std::cos(2.0 * theta2);
    v13 += act / fa *
           (std::sin(2.0 * theta) + torque2 / fb2 * std::sin(2.0 * theta2));
  }
  return v13;
}

namespace {

collocation::OdeRhs make_theta_rhs(double eta, double eta_xxx, double theta2,
                                   const LepModel& m) {
  return [=](double x, const double* y, double* f) {
    const double theta = y[0], mm = y[1];  // mm = 2 K theta,3
    const double v13 = lep_velocity_gradient(theta, eta, eta_xxx, x, theta2, m);
    const double torque = m.coef.gamma1 - m.coef.gamma2 * std::cos(2.0 * theta);
    f[0] = mm / (2.0 * m.K);
    f[1] = -torque * v13;
  };
}

}  // namespace

ColumnReport lep_column_report(double eta, double eta_xxx, double theta1,
                               double theta2, const LepModel& m,
                               const ColumnProfile* guess,
                               const ColumnOptions& opts) {
  if (!(eta > 0.0)) throw DomainError("lep column: eta must be positive");
  if (!(m.K > 0.0)) throw DomainError("lep column: K must be positive");
  const std::size_t n = opts.n_nodes;
  std::vector<double> mesh = uniform_grid(eta, n);

  collocation::BvpSolver solver(2, make_theta_rhs(eta, eta_xxx, theta2, m),
                                {{0, theta1}}, {{0, theta2}});
  std::vector<std::vector<double>> y0(2, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = mesh[i] / eta;
    y0[0][i] = guess && guess->size() == n ? guess->theta[i]
                                           : theta1 + (theta2 - theta1) * t;
    y0[1][i] = 2.0 * m.K * (theta2 - theta1) / eta;
  }
  collocation::BvpOptions bopts;
  bopts.tol = opts.tol;
  auto sol = solver.solve(mesh, y0, bopts);

  ColumnReport rep;
  rep.residual_norm = sol.residual_norm;
  rep.defect_norm = solver.defect_norm(sol);
  rep.iterations = sol.iterations;
  ColumnProfile& col = rep.profile;
  col.eta = eta;
  col.x3 = mesh;
  col.theta = sol.y[0];
  std::vector<double> dv(n);
  for (std::size_t i = 0; i < n; ++i)
    dv[i] = lep_velocity_gradient(col.theta[i], eta, eta_xxx, mesh[i], theta2, m);
  col.v1 = detail::cumulative_trapezoid(mesh, dv);
  return rep;
}

ColumnProfile lep_column_bvp(double eta, double eta_xxx, double theta1,
                             double theta2, const LepModel& m,
                             const ColumnProfile* guess,
                             const ColumnOptions& opts) {
  return lep_column_report(eta, eta_xxx, theta1, theta2, m, guess, opts).profile;
}

FilmTrajectory lep_evolve(const FilmState& film0, double theta1, double theta2,
                          const LepModel& m, const EvolveOptions& opts) {
  const std::size_t n = film0.size();
  const double h = film0.spacing();
  FilmState film = film0;

  FilmTrajectory traj;
  auto record = [&](const FilmState& f) {
    traj.times.push_back(f.time);
    traj.mass.push_back(f.mass());
    traj.min_eta.push_back(f.min_eta());
    traj.max_eta.push_back(f.max_eta());
  };
  record(film);
  if (opts.snapshot_every > 0) traj.snapshots.push_back(film);

  std::vector<ColumnProfile> warm(n);
  bool have_warm = false;

  ColumnOptions copts;
  copts.n_nodes = opts.n_column_nodes;

  const long steps = std::lround(opts.t_end / opts.dt);
  const double dt = opts.t_end / static_cast<double>(steps);

  Eigen::SparseMatrix<double> M(static_cast<int>(n), static_cast<int>(n));
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool pattern_set = false;
  auto wrap = [&](std::ptrdiff_t i) {
    return static_cast<int>((i % static_cast<std::ptrdiff_t>(n) + n) % n);
  };
  const bool fourth = opts.third_derivative == ThirdDerivative::fourth_order;
  const double c3 = 1.0 / (8.0 * h * h * h);
  double w3[7];
  if (fourth) {
    w3[0] = c3; w3[1] = -8 * c3; w3[2] = 13 * c3; w3[3] = 0.0;
    w3[4] = -13 * c3; w3[5] = 8 * c3; w3[6] = -c3;
  } else {
    w3[0] = -c3; w3[1] = 0.0; w3[2] = 3 * c3; w3[3] = 0.0;
    w3[4] = -3 * c3; w3[5] = 0.0; w3[6] = c3;
  }

  std::vector<double> exxx(n), fluxes(n), mobilities(n), psi(n);
  for (long step = 0; step < steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = static_cast<std::ptrdiff_t>(i);
      auto at = [&](std::ptrdiff_t k) { return film.eta[wrap(k)]; };
      if (fourth)
        exxx[i] = (-at(s + 3) + 8 * at(s + 2) - 13 * at(s + 1) +
                   13 * at(s - 1) - 8 * at(s - 2) + at(s - 3)) /
                  (8 * h * h * h);
      else
        exxx[i] = (at(s + 3) - 3 * at(s + 1) + 3 * at(s - 1) - at(s - 3)) /
                  (8 * h * h * h);
    }

    for (std::size_t i = 0; i < n; ++i) {
      ColumnReport rep =
          lep_column_report(film.eta[i], exxx[i], theta1, theta2, m,
                            have_warm ? &warm[i] : nullptr, copts);
      warm[i] = std::move(rep.profile);
      const ColumnProfile& col = warm[i];
      fluxes[i] = detail::simpson(col.x3, col.v1);
      // capillary mobility at the frozen angle profile
      std::vector<double> kern(col.size());
      for (std::size_t k = 0; k < col.size(); ++k)
        kern[k] = 2.0 * (col.eta - col.x3[k]) / f_A(m.coef, col.theta[k]);
      const std::vector<double> w = detail::cumulative_trapezoid(col.x3, kern);
      mobilities[i] = detail::simpson(col.x3, w);
      psi[i] = fluxes[i] - mobilities[i] * exxx[i];
    }
    have_warm = true;

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(n * 13);
    for (std::size_t i = 0; i < n; ++i) {
      const auto si = static_cast<std::ptrdiff_t>(i);
      trips.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const std::ptrdiff_t mm = si + sgn;
        const double d1w = sgn / (2.0 * h);
        const double phi = mobilities[wrap(mm)];
        for (int off = -3; off <= 3; ++off) {
          if (w3[off + 3] == 0.0) continue;
          trips.emplace_back(static_cast<int>(i), wrap(mm + off),
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
      throw NonConvergenceError("lep evolve: implicit film step failed", {});

    Eigen::VectorXd rhs(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto si = static_cast<std::ptrdiff_t>(i);
      const double dpsi = (psi[wrap(si + 1)] - psi[wrap(si - 1)]) / (2.0 * h);
      rhs[static_cast<int>(i)] = film.eta[i] - dt * dpsi;
    }
    Eigen::VectorXd next = lu.solve(rhs);
    for (std::size_t i = 0; i < n; ++i) film.eta[i] = next[static_cast<int>(i)];
    film.time += dt;

    if (film.min_eta() < opts.min_eta_floor)
      throw ThicknessBlowdownError("lep evolve: film thickness below floor",
                                   film.time, film.min_eta());
    record(film);
    if (opts.snapshot_every > 0 && (step + 1) % opts.snapshot_every == 0)
      traj.snapshots.push_back(film);
  }
  traj.final_film = film;
  return traj;
}

}  // namespace actigel::lep

#include "actigel/lubrication.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <thread>

#include "actigel/detail/column_system.hpp"
#include "actigel/errors.hpp"

namespace actigel::detail {

std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                         const std::vector<double>& dv) {
  std::vector<double> v(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i)
    v[i] = v[i - 1] + 0.5 * (dv[i] + dv[i - 1]) * (x[i] - x[i - 1]);
  return v;
}

double simpson(const std::vector<double>& x, const std::vector<double>& f) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const double h = x[1] - x[0];
  double s = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) s += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  if (i + 1 < n) s += 0.5 * h * (f[i] + f[i + 1]);  // even node count
  return s;
}

collocation::OdeRhs make_column_rhs(double eta, double eta_xxx,
                                    const AnchoringData& bc,
                                    const MaterialParams& p) {
  return [=](double x, const double* y, double* f) {
    const double theta = y[0], m = y[1], q = y[2], w = y[3];
    if (std::abs(q) < 1e-9)
      throw DomainError("column solve: q collapsed to zero");
    const double v13 =
        lubrication::velocity_gradient(q, theta, eta, eta_xxx, x, bc, p);
    const LeslieCoefficients lc = leslie_coefficients(q, p);
    const double torque = lc.gamma1 - lc.gamma2 * std::cos(2.0 * theta);
    const double tp = m / (q * q);
    f[0] = tp;
    f[1] = -torque * v13 / (4.0 * p.l1);
    f[2] = w;
    f[3] = 4.0 * q * tp * tp -
           p.xi * (q + 2.0) / (3.0 * p.l1 * p.gamma_rot) *
               std::sin(2.0 * theta) * v13 -
           q / p.l1 * (p.a2 - p.c2 * q * q / 2.0) -
           p.activity * p.lambda1 / p.l1 * q;
  };
}

collocation::OdeRhs make_theta_rhs_const_q(double q_const, double eta,
                                           double eta_xxx,
                                           const AnchoringData& bc,
                                           const MaterialParams& p) {
  const LeslieCoefficients lc = leslie_coefficients(q_const, p);
  return [=](double x, const double* y, double* f) {
    const double theta = y[0], m = y[1];
    const double v13 =
        lubrication::velocity_gradient(q_const, theta, eta, eta_xxx, x, bc, p);
    const double torque = lc.gamma1 - lc.gamma2 * std::cos(2.0 * theta);
    f[0] = m / (q_const * q_const);
    f[1] = -torque * v13 / (4.0 * p.l1);
  };
}

}  // namespace actigel::detail

namespace actigel::lubrication {

double velocity_gradient(double q, double theta, double eta, double eta_xxx,
                         double x3, const AnchoringData& bc,
                         const MaterialParams& p) {
  const LeslieCoefficients lc = leslie_coefficients(q, p);
  const double fa = f_A(lc, theta);
  if (std::abs(fa) < 1e-12 * (1.0 + std::abs(lc.alpha[3])))
    throw ViscositySingularityError("velocity gradient: f_A(q, theta) = 0");

  double v13 = 2.0 * eta_xxx * (eta - x3) / fa;
  if (p.activity != 0.0) {
    const LeslieCoefficients l2 = leslie_coefficients(bc.q2, p);
    const double fb2 = f_B(l2, bc.theta2);
    if (std::abs(fb2) < 1e-12 * (1.0 + std::abs(l2.alpha[3])))
      throw BoundaryClosureSingularityError(
          "velocity gradient: f_B(q2, theta2) = 0");
    const double surface = (l2.gamma1 - l2.gamma2 * std::cos(2.0 * bc.theta2)) /
                           fb2 * active_coupling(bc.q2, p) *
                           std::sin(2.0 * bc.theta2);
    v13 -= p.activity / fa *
           (active_coupling(q, p) * std::sin(2.0 * theta) + surface);
  }
  return v13;
}

namespace {

ColumnProfile forced_constant_column(double eta, double eta_xxx,
                                     const AnchoringData& bc,
                                     const MaterialParams& p,
                                     std::size_t n_nodes) {
  ColumnProfile col;
  col.eta = eta;
  col.x3 = uniform_grid(eta, n_nodes);
  col.theta.assign(n_nodes, bc.theta1);
  col.q.assign(n_nodes, bc.q1);
  std::vector<double> dv(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i)
    dv[i] = velocity_gradient(bc.q1, bc.theta1, eta, eta_xxx, col.x3[i], bc, p);
  col.v1 = detail::cumulative_trapezoid(col.x3, dv);
  return col;
}

}  // namespace

ColumnReport column_report(double eta, double eta_xxx, const AnchoringData& bc,
                           const MaterialParams& p, const ColumnProfile* guess,
                           const ColumnOptions& opts) {
  if (!(eta > 0.0)) throw DomainError("column solve: eta must be positive");
  const std::size_t n = opts.n_nodes;
  std::vector<double> mesh = uniform_grid(eta, n);

  if (opts.mode == ColumnMode::forced_constant) {
    ColumnReport rep;
    rep.profile = forced_constant_column(eta, eta_xxx, bc, p, n);
    return rep;
  }

  ColumnReport rep;
  collocation::BvpOptions bopts;
  bopts.tol = opts.tol;

  if (opts.mode == ColumnMode::constant_q) {
    if (std::abs(bc.q1 - bc.q2) > 1e-12)
      throw InvalidRegimeError("constant-q column requires q1 == q2");
    const double qc = bc.q1;
    collocation::BvpSolver solver(2, detail::make_theta_rhs_const_q(qc, eta, eta_xxx, bc, p),
                                  {{0, bc.theta1}}, {{0, bc.theta2}});
    std::vector<std::vector<double>> y0(2, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const double t = mesh[i] / eta;
      y0[0][i] = guess && guess->size() == n ? guess->theta[i]
                                             : bc.theta1 + (bc.theta2 - bc.theta1) * t;
      y0[1][i] = qc * qc * (bc.theta2 - bc.theta1) / eta;
    }
    auto sol = solver.solve(mesh, y0, bopts);
    rep.residual_norm = sol.residual_norm;
    rep.defect_norm = solver.defect_norm(sol);
    rep.iterations = sol.iterations;
    ColumnProfile& col = rep.profile;
    col.eta = eta;
    col.x3 = mesh;
    col.theta = sol.y[0];
    col.q.assign(n, qc);
    std::vector<double> dv(n);
    for (std::size_t i = 0; i < n; ++i)
      dv[i] = velocity_gradient(qc, col.theta[i], eta, eta_xxx, mesh[i], bc, p);
    col.v1 = detail::cumulative_trapezoid(mesh, dv);
    return rep;
  }

  collocation::BvpSolver solver(4, detail::make_column_rhs(eta, eta_xxx, bc, p),
                                {{0, bc.theta1}, {2, bc.q1}},
                                {{0, bc.theta2}, {2, bc.q2}});
  std::vector<std::vector<double>> y0(4, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = mesh[i] / eta;
    double th, qq;
    if (guess && guess->size() == n) {
      th = guess->theta[i];
      qq = guess->q[i];
    } else {
      th = bc.theta1 + (bc.theta2 - bc.theta1) * t;
      qq = bc.q1 + (bc.q2 - bc.q1) * t;
    }
    y0[0][i] = th;
    y0[2][i] = qq;
  }
  // torque and q-slope estimates from the positional guess
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t il = i == 0 ? 0 : i - 1;
    const std::size_t ir = i + 1 == n ? i : i + 1;
    const double dx = mesh[ir] - mesh[il];
    y0[1][i] = y0[2][i] * y0[2][i] * (y0[0][ir] - y0[0][il]) / dx;
    y0[3][i] = (y0[2][ir] - y0[2][il]) / dx;
  }

  auto sol = solver.solve(mesh, y0, bopts);
  rep.residual_norm = sol.residual_norm;
  rep.defect_norm = solver.defect_norm(sol);
  rep.iterations = sol.iterations;

  ColumnProfile& col = rep.profile;
  col.eta = eta;
  col.x3 = mesh;
  col.theta = sol.y[0];
  col.q = sol.y[2];
  std::vector<double> dv(n);
  for (std::size_t i = 0; i < n; ++i)
    dv[i] = velocity_gradient(col.q[i], col.theta[i], eta, eta_xxx, mesh[i], bc, p);
  col.v1 = detail::cumulative_trapezoid(mesh, dv);

  // f_A must stay one-signed along the converged profile
  double fa_min = 1e300, fa_max = -1e300;
  for (std::size_t i = 0; i < n; ++i) {
    const double fa = f_A(col.q[i], col.theta[i], p);
    fa_min = std::min(fa_min, fa);
    fa_max = std::max(fa_max, fa);
  }
  if (fa_min <= 0.0 && fa_max >= 0.0)
    throw ViscositySingularityError("column solve: f_A crosses zero");
  return rep;
}

ColumnProfile column_bvp(double eta, double eta_xxx, const AnchoringData& bc,
                         const MaterialParams& p, const ColumnProfile* guess,
                         const ColumnOptions& opts) {
  return column_report(eta, eta_xxx, bc, p, guess, opts).profile;
}

double flux(const ColumnProfile& column) {
  return detail::simpson(column.x3, column.v1);
}

std::vector<double> third_derivative(const FilmState& film,
                                     ThirdDerivative scheme) {
  const std::size_t n = film.size();
  const double h = film.spacing();
  std::vector<double> d(n);
  auto at = [&](std::ptrdiff_t i) {
    return film.eta[(i % static_cast<std::ptrdiff_t>(n) + n) % n];
  };
  if (scheme == ThirdDerivative::composed_centered) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = static_cast<std::ptrdiff_t>(i);
      d[i] = (at(s + 3) - 3.0 * at(s + 1) + 3.0 * at(s - 1) - at(s - 3)) /
             (8.0 * h * h * h);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = static_cast<std::ptrdiff_t>(i);
      d[i] = (-at(s + 3) + 8.0 * at(s + 2) - 13.0 * at(s + 1) +
              13.0 * at(s - 1) - 8.0 * at(s - 2) + at(s - 3)) /
             (8.0 * h * h * h);
    }
  }
  return d;
}

namespace {

struct ColumnOutputs {
  ColumnProfile profile;
  double flux_total = 0.0;
  double mobility = 0.0;  // d(flux)/d(eta_xxx) at frozen profiles
  double residual = 0.0;
};

// Capillary mobility: integral over the column of the cumulative capillary
// kernel 2 (eta - s) / f_A(q(s), theta(s)).
double capillary_mobility(const ColumnProfile& col, const MaterialParams& p) {
  const std::size_t n = col.size();
  std::vector<double> kern(n);
  for (std::size_t i = 0; i < n; ++i)
    kern[i] = 2.0 * (col.eta - col.x3[i]) / f_A(col.q[i], col.theta[i], p);
  const std::vector<double> w = detail::cumulative_trapezoid(col.x3, kern);
  return detail::simpson(col.x3, w);
}

ColumnOutputs solve_one_column(double eta, double eta_xxx,
                               const AnchoringData& bc, const MaterialParams& p,
                               const ColumnProfile* guess,
                               const ColumnOptions& copts) {
  ColumnOutputs out;
  ColumnReport rep = column_report(eta, eta_xxx, bc, p, guess, copts);
  out.profile = std::move(rep.profile);
  out.residual = rep.residual_norm;
  out.flux_total = flux(out.profile);
  out.mobility = capillary_mobility(out.profile, p);
  return out;
}

void run_indexed(int threads, std::size_t n,
                 const std::function<void(std::size_t)>& body) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

LubricationField solve_columns(const FilmState& film, const AnchoringData& bc,
                               const MaterialParams& p,
                               const EvolveOptions& opts) {
  const std::size_t n = film.size();
  LubricationField field;
  field.film = film;
  field.columns.resize(n);
  field.residuals.assign(n, 0.0);
  const std::vector<double> exxx = third_derivative(film, opts.third_derivative);

  ColumnOptions copts;
  copts.n_nodes = opts.n_column_nodes;
  copts.mode = opts.mode;

  std::vector<std::exception_ptr> errors(n);
  run_indexed(opts.threads, n, [&](std::size_t i) {
    try {
      AnchoringData bci = bc;
      if (!opts.q2_profile.empty()) bci.q2 = opts.q2_profile[i];
      MaterialParams pi = p;
      if (!opts.activity_profile.empty()) pi.activity = opts.activity_profile[i];
      ColumnReport rep = column_report(film.eta[i], exxx[i], bci, pi, nullptr, copts);
      field.columns[i] = std::move(rep.profile);
      field.residuals[i] = rep.residual_norm;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (std::size_t i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  return field;
}

Trajectory evolve(const FilmState& film0, const AnchoringData& bc,
                  const MaterialParams& p, const EvolveOptions& opts) {
  const std::size_t n = film0.size();
  const double h = film0.spacing();

  Trajectory traj;
  FilmState film = film0;
  std::vector<ColumnProfile> warm(n);
  bool have_warm = false;

  ColumnOptions copts;
  copts.n_nodes = opts.n_column_nodes;
  copts.mode = opts.mode;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  Eigen::SparseMatrix<double> M(static_cast<int>(n), static_cast<int>(n));
  bool pattern_set = false;

  auto record = [&](const FilmState& f) {
    traj.times.push_back(f.time);
    traj.mass.push_back(f.mass());
    traj.min_eta.push_back(f.min_eta());
    traj.max_eta.push_back(f.max_eta());
  };
  record(film);
  if (opts.snapshot_every > 0) traj.snapshots.push_back(film);

  std::vector<double> fluxes(n), mobilities(n), psi(n), residuals(n, 0.0);
  std::vector<std::exception_ptr> errors(n);
  const long steps = std::lround(opts.t_end / opts.dt);
  const double dt = opts.t_end / static_cast<double>(steps);

  for (long step = 0; step < steps; ++step) {
    const std::vector<double> exxx = third_derivative(film, opts.third_derivative);

    run_indexed(opts.threads, n, [&](std::size_t i) {
      try {
        AnchoringData bci = bc;
        if (!opts.q2_profile.empty()) bci.q2 = opts.q2_profile[i];
        MaterialParams pi = p;
        if (!opts.activity_profile.empty())
          pi.activity = opts.activity_profile[i];
        ColumnOutputs out = solve_one_column(
            film.eta[i], exxx[i], bci, pi,
            have_warm ? &warm[i] : nullptr, copts);
        fluxes[i] = out.flux_total;
        mobilities[i] = out.mobility;
        residuals[i] = out.residual;
        warm[i] = std::move(out.profile);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
    for (std::size_t i = 0; i < n; ++i)
      if (errors[i]) {
        auto err = errors[i];
        errors[i] = nullptr;
        try {
          std::rethrow_exception(err);
        } catch (const SolverError& e) {
          throw SolverError(e.code(),
                            std::string(e.what()) + " at x1 index " +
                                std::to_string(i) + ", t = " +
                                std::to_string(film.time));
        }
      }
    have_warm = true;

    // active / non-capillary remainder of each column flux
    for (std::size_t i = 0; i < n; ++i)
      psi[i] = fluxes[i] - mobilities[i] * exxx[i];

    // implicit capillary step: (I + dt D1 diag(Phi) D3) eta_new = eta - dt D1 psi
    const bool fourth = opts.third_derivative == ThirdDerivative::fourth_order;
    auto wrap = [&](std::ptrdiff_t i) {
      return static_cast<int>((i % static_cast<std::ptrdiff_t>(n) + n) % n);
    };
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(n * 11);
    // third-derivative stencil weights over offsets -3..3, divided by h^3
    double w3[7];
    if (fourth) {
      const double c = 1.0 / (8.0 * h * h * h);
      w3[0] = c;       // -3
      w3[1] = -8 * c;  // -2
      w3[2] = 13 * c;  // -1
      w3[3] = 0.0;
      w3[4] = -13 * c;
      w3[5] = 8 * c;
      w3[6] = -c;
    } else {
      const double c = 1.0 / (8.0 * h * h * h);
      w3[0] = -c;
      w3[1] = 0.0;
      w3[2] = 3 * c;
      w3[3] = 0.0;
      w3[4] = -3 * c;
      w3[5] = 0.0;
      w3[6] = c;
    }
    // note the stencil above is written for u(i+off): offset +3 weight w3[6]
    for (std::size_t i = 0; i < n; ++i) {
      const auto si = static_cast<std::ptrdiff_t>(i);
      trips.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
      // D1 row i couples rows i+-1 of diag(Phi) D3
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const std::ptrdiff_t m = si + sgn;
        const double d1w = sgn / (2.0 * h);
        const double phi = mobilities[wrap(m)];
        for (int off = -3; off <= 3; ++off) {
          const double w = w3[off + 3];
          if (w == 0.0) continue;
          trips.emplace_back(static_cast<int>(i), wrap(m + off),
                             dt * d1w * phi * w);
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
      throw NonConvergenceError("evolve: implicit film step failed to factor", {});

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
      throw ThicknessBlowdownError("evolve: film thickness below floor",
                                   film.time, film.min_eta());
    record(film);
    if (opts.snapshot_every > 0 && (step + 1) % opts.snapshot_every == 0)
      traj.snapshots.push_back(film);
  }

  traj.final_field.film = film;
  traj.final_field.columns = warm;
  traj.final_field.residuals = residuals;
  return traj;
}

}  // namespace actigel::lubrication

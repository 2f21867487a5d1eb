#include "actigel/collocation.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

#include "actigel/errors.hpp"

namespace actigel::collocation {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

BvpSolver::BvpSolver(int ncomp, OdeRhs rhs, std::vector<DirichletBc> left,
                     std::vector<DirichletBc> right)
    : ncomp_(ncomp), rhs_(std::move(rhs)), left_(std::move(left)),
      right_(std::move(right)) {
  if (static_cast<int>(left_.size() + right_.size()) != ncomp_)
    throw std::invalid_argument("BvpSolver: boundary condition count != ncomp");
}

namespace {

// Simpson residual on one interval; yl/yr point at ncomp entries.
void interval_residual(const OdeRhs& rhs, int n, double xl, double h,
                       const double* yl, const double* yr, double* out,
                       std::vector<double>& scratch) {
  scratch.resize(static_cast<std::size_t>(4) * n);
  double* fl = scratch.data();
  double* fr = fl + n;
  double* ym = fr + n;
  double* fm = ym + n;
  rhs(xl, yl, fl);
  rhs(xl + h, yr, fr);
  for (int c = 0; c < n; ++c)
    ym[c] = 0.5 * (yl[c] + yr[c]) + (h / 8.0) * (fl[c] - fr[c]);
  rhs(xl + 0.5 * h, ym, fm);
  for (int c = 0; c < n; ++c)
    out[c] = yr[c] - yl[c] - (h / 6.0) * (fl[c] + 4.0 * fm[c] + fr[c]);
}

}  // namespace

BvpSolution BvpSolver::solve(const std::vector<double>& mesh,
                             const std::vector<std::vector<double>>& guess,
                             const BvpOptions& opts) const {
  const int n = ncomp_;
  const std::size_t N = mesh.size();
  if (N < 3) throw std::invalid_argument("BvpSolver: mesh too small");
  const std::size_t dof = n * N;

  // Flat unknown vector, node-major.
  std::vector<double> Y(dof);
  for (std::size_t i = 0; i < N; ++i)
    for (int c = 0; c < n; ++c) Y[i * n + c] = guess[c][i];

  std::vector<double> scratch;
  auto assemble_residual = [&](const std::vector<double>& y,
                               std::vector<double>& R) {
    R.assign(dof, 0.0);
    std::size_t row = 0;
    for (const auto& bc : left_) R[row++] = y[bc.component] - bc.value;
    for (std::size_t i = 0; i + 1 < N; ++i) {
      interval_residual(rhs_, n, mesh[i], mesh[i + 1] - mesh[i], &y[i * n],
                        &y[(i + 1) * n], &R[row], scratch);
      row += n;
    }
    for (const auto& bc : right_)
      R[row++] = y[(N - 1) * n + bc.component] - bc.value;
  };

  std::vector<double> R(dof), Rtrial(dof), Ytrial(dof);
  std::vector<double> history;
  assemble_residual(Y, R);
  double nrm = max_abs(R);
  history.push_back(nrm);

  Eigen::SparseMatrix<double> J(static_cast<int>(dof), static_cast<int>(dof));
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  std::vector<Eigen::Triplet<double>> trips;
  std::vector<double> base(static_cast<std::size_t>(n)),
      pert(static_cast<std::size_t>(n));

  int iter = 0;
  for (; iter < opts.max_iterations && nrm > opts.tol; ++iter) {
    trips.clear();
    std::size_t row = 0;
    for (const auto& bc : left_)
      trips.emplace_back(static_cast<int>(row++), bc.component, 1.0);
    for (std::size_t i = 0; i + 1 < N; ++i) {
      const double h = mesh[i + 1] - mesh[i];
      interval_residual(rhs_, n, mesh[i], h, &Y[i * n], &Y[(i + 1) * n],
                        base.data(), scratch);
      // forward-difference block Jacobian wrt y_i and y_{i+1}
      for (int side = 0; side < 2; ++side) {
        const std::size_t off = (i + side) * n;
        for (int c = 0; c < n; ++c) {
          const double y0 = Y[off + c];
          const double d = 1e-7 * std::max(1.0, std::abs(y0));
          Y[off + c] = y0 + d;
          interval_residual(rhs_, n, mesh[i], h, &Y[i * n], &Y[(i + 1) * n],
                            pert.data(), scratch);
          Y[off + c] = y0;
          for (int r = 0; r < n; ++r) {
            const double v = (pert[r] - base[r]) / d;
            if (v != 0.0)
              trips.emplace_back(static_cast<int>(row) + r,
                                 static_cast<int>(off) + c, v);
          }
        }
      }
      row += n;
    }
    for (const auto& bc : right_)
      trips.emplace_back(static_cast<int>(row++),
                         static_cast<int>((N - 1) * n) + bc.component, 1.0);

    J.setFromTriplets(trips.begin(), trips.end());
    if (iter == 0) lu.analyzePattern(J);
    lu.factorize(J);
    if (lu.info() != Eigen::Success)
      throw NonConvergenceError("BvpSolver: singular collocation Jacobian",
                                history);

    Eigen::VectorXd rhs_vec(dof);
    for (std::size_t k = 0; k < dof; ++k) rhs_vec[static_cast<int>(k)] = -R[k];
    Eigen::VectorXd step = lu.solve(rhs_vec);

    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= opts.min_damping) {
      for (std::size_t k = 0; k < dof; ++k)
        Ytrial[k] = Y[k] + lambda * step[static_cast<int>(k)];
      bool eval_ok = true;
      double trial_nrm = 0.0;
      try {
        assemble_residual(Ytrial, Rtrial);
        trial_nrm = max_abs(Rtrial);
      } catch (const SolverError&) {
        eval_ok = false;  // trial iterate left the admissible region
      }
      if (eval_ok && (trial_nrm < (1.0 - 0.25 * lambda) * nrm ||
                      trial_nrm <= opts.tol)) {
        Y.swap(Ytrial);
        R.swap(Rtrial);
        nrm = trial_nrm;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    history.push_back(nrm);
    if (!accepted)
      throw NonConvergenceError("BvpSolver: damped Newton stalled", history);
  }

  if (nrm > opts.tol)
    throw NonConvergenceError("BvpSolver: iteration limit reached", history);

  BvpSolution sol;
  sol.x = mesh;
  sol.y.assign(n, std::vector<double>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (int c = 0; c < n; ++c) sol.y[c][i] = Y[i * n + c];
  sol.residual_norm = nrm;
  sol.iterations = iter;
  return sol;
}

double BvpSolver::defect_norm(const BvpSolution& sol) const {
  const int n = ncomp_;
  const std::size_t N = sol.x.size();
  std::vector<double> yl(n), yr(n), fl(n), fr(n), s(n), sp(n), fs(n);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const double h = sol.x[i + 1] - sol.x[i];
    for (int c = 0; c < n; ++c) {
      yl[c] = sol.y[c][i];
      yr[c] = sol.y[c][i + 1];
    }
    rhs_(sol.x[i], yl.data(), fl.data());
    rhs_(sol.x[i + 1], yr.data(), fr.data());
    for (double tau : {0.25, 0.75}) {
      const double t2 = tau * tau;
      const double h00 = 2 * t2 * tau - 3 * t2 + 1;
      const double h10 = t2 * tau - 2 * t2 + tau;
      const double h01 = -2 * t2 * tau + 3 * t2;
      const double h11 = t2 * tau - t2;
      const double d00 = 6 * t2 - 6 * tau;
      const double d10 = 3 * t2 - 4 * tau + 1;
      const double d01 = -6 * t2 + 6 * tau;
      const double d11 = 3 * t2 - 2 * tau;
      for (int c = 0; c < n; ++c) {
        s[c] = h00 * yl[c] + h10 * h * fl[c] + h01 * yr[c] + h11 * h * fr[c];
        sp[c] = (d00 * yl[c] + d01 * yr[c]) / h + d10 * fl[c] + d11 * fr[c];
      }
      rhs_(sol.x[i] + tau * h, s.data(), fs.data());
      for (int c = 0; c < n; ++c)
        worst = std::max(worst, std::abs(sp[c] - fs[c]));
    }
  }
  return worst;
}

}  // namespace actigel::collocation

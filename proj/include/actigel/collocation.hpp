#ifndef ACTIGEL_COLLOCATION_HPP
#define ACTIGEL_COLLOCATION_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace actigel::collocation {

// Right-hand side of y' = f(x, y); y and f have ncomp entries.
using OdeRhs = std::function<void(double x, const double* y, double* f)>;

struct DirichletBc {
  int component;
  double value;
};

struct BvpOptions {
  double tol = 1e-10;        // max-norm residual target
  int max_iterations = 60;
  double min_damping = 1.0 / 4096.0;
};

struct BvpSolution {
  std::vector<double> x;               // mesh
  std::vector<std::vector<double>> y;  // y[comp][node]
  double residual_norm = 0.0;
  int iterations = 0;
};

/** Two-point BVP solver: 3-stage Lobatto (Simpson) collocation on a fixed
 * mesh with a damped Newton iteration. Boundary conditions are Dirichlet
 * pins at either end; their total count must equal ncomp.
 */
class BvpSolver {
 public:
  BvpSolver(int ncomp, OdeRhs rhs, std::vector<DirichletBc> left,
            std::vector<DirichletBc> right);

  // guess[comp][node] sized to mesh; throws NonConvergenceError on failure.
  BvpSolution solve(const std::vector<double>& mesh,
                    const std::vector<std::vector<double>>& guess,
                    const BvpOptions& opts = {}) const;

  // Max-norm ODE defect of the cubic collocation interpolant, sampled at
  // interval quarter points (where it is not annihilated by construction).
  double defect_norm(const BvpSolution& sol) const;

 private:
  int ncomp_;
  OdeRhs rhs_;
  std::vector<DirichletBc> left_;
  std::vector<DirichletBc> right_;
};

}  // namespace actigel::collocation

#endif

#ifndef ACTIGEL_ERRORS_HPP
#define ACTIGEL_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace actigel {

// Failure categories; the CLI maps these to process exit codes.
enum class ErrorCode {
  invalid_config = 2,
  no_solution = 3,
  invalid_regime = 4,
  turning_point = 5,
  viscosity_singularity = 6,
  non_convergence = 7,
  thickness_blowdown = 8,
  domain_error = 9,
  boundary_closure_singularity = 10,
};

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ConfigError : SolverError {
  explicit ConfigError(const std::string& w)
      : SolverError(ErrorCode::invalid_config, w) {}
};

struct NoSolutionError : SolverError {
  explicit NoSolutionError(const std::string& w)
      : SolverError(ErrorCode::no_solution, w) {}
};

struct InvalidRegimeError : SolverError {
  explicit InvalidRegimeError(const std::string& w)
      : SolverError(ErrorCode::invalid_regime, w) {}
};

// Carries the abscissa where the quadrature denominator lost positivity.
struct TurningPointError : SolverError {
  TurningPointError(double s_, const std::string& w)
      : SolverError(ErrorCode::turning_point, w), s(s_) {}
  double s;
};

struct ViscositySingularityError : SolverError {
  explicit ViscositySingularityError(const std::string& w)
      : SolverError(ErrorCode::viscosity_singularity, w) {}
};

struct BoundaryClosureSingularityError : SolverError {
  explicit BoundaryClosureSingularityError(const std::string& w)
      : SolverError(ErrorCode::boundary_closure_singularity, w) {}
};

// Newton failure; keeps the residual-norm history for postmortems.
struct NonConvergenceError : SolverError {
  NonConvergenceError(const std::string& w, std::vector<double> history)
      : SolverError(ErrorCode::non_convergence, w),
        residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

struct ThicknessBlowdownError : SolverError {
  ThicknessBlowdownError(const std::string& w, double t_, double min_eta_)
      : SolverError(ErrorCode::thickness_blowdown, w), t(t_), min_eta(min_eta_) {}
  double t;
  double min_eta;
};

struct DomainError : SolverError {
  explicit DomainError(const std::string& w)
      : SolverError(ErrorCode::domain_error, w) {}
};

}  // namespace actigel

#endif

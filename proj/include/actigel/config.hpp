#ifndef ACTIGEL_CONFIG_HPP
#define ACTIGEL_CONFIG_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "actigel/lubrication.hpp"
#include "actigel/material.hpp"
#include "actigel/smallangle.hpp"

namespace actigel::config {

struct GeometryConfig {
  double eta = 1.0;
  double eta_xxx = 0.0;  // imposed third derivative for single-column runs
  std::size_t x1_nodes = 128;
  double x1_length = 1.0;
  std::size_t column_nodes = 201;
  double perturbation_amplitude = 0.0;
  int perturbation_mode = 1;
};

struct SolverConfig {
  double tol = 1e-10;
  double dt = 0.0;  // 0: scheme default
  double t_end = 0.0;
  lubrication::ColumnMode mode = lubrication::ColumnMode::full;
  lubrication::ThirdDerivative third_derivative =
      lubrication::ThirdDerivative::fourth_order;
  smallangle::Advection advection = smallangle::Advection::upwind;
  int threads = 1;
  int snapshot_every = 0;
  double min_eta_floor = 1e-6;
  std::vector<double> q2_profile;
  std::vector<double> activity_profile;
};

struct DiagnosticsConfig {
  std::string field = "point_defect";  // point_defect | isotropic_line
  std::size_t nx = 64;
  std::size_t nz = 65;
  double core_width = 0.05;
  double q_threshold = 1e-3;
};

struct OutputConfig {
  std::string dir;  // empty: CLI flag or ACTIGEL_OUTPUT_ROOT decides
  std::string prefix = "run";
};

struct ScenarioConfig {
  std::string scenario;
  MaterialParams material;
  AnchoringData anchoring;
  GeometryConfig geometry;
  SolverConfig solver;
  DiagnosticsConfig diagnostics;
  OutputConfig output;
  std::string raw;  // config text echoed into the manifest
};

// Throws ConfigError with field/position diagnostics.
ScenarioConfig load(const std::string& path);
ScenarioConfig parse(const std::string& text, const std::string& origin);

struct ValidationIssue {
  enum class Severity { error, warning };
  Severity severity;
  std::string field;
  std::string message;
};

// Report-only schema and physical-range check; never throws on content.
std::vector<ValidationIssue> validate_file(const std::string& path);

}  // namespace actigel::config

#endif

#include "actigel/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "actigel/csvio.hpp"
#include "actigel/diagnostics.hpp"
#include "actigel/errors.hpp"
#include "actigel/flatfilm.hpp"
#include "actigel/lep.hpp"
#include "actigel/lubrication.hpp"
#include "actigel/smallangle.hpp"

namespace actigel::scenario {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

csv::HeaderItems material_header(const config::ScenarioConfig& cfg) {
  const MaterialParams& p = cfg.material;
  const AnchoringData& bc = cfg.anchoring;
  return {
      {"xi", csv::format_double(p.xi)},
      {"gamma_rot", csv::format_double(p.gamma_rot)},
      {"mu", csv::format_double(p.mu)},
      {"l1", csv::format_double(p.l1)},
      {"a2", csv::format_double(p.a2)},
      {"c2", csv::format_double(p.c2)},
      {"activity", csv::format_double(p.activity)},
      {"lambda1", csv::format_double(p.lambda1)},
      {"zeta", csv::format_double(p.zeta)},
      {"theta1", csv::format_double(bc.theta1)},
      {"theta2", csv::format_double(bc.theta2)},
      {"q1", csv::format_double(bc.q1)},
      {"q2", csv::format_double(bc.q2)},
      {"eta", csv::format_double(cfg.geometry.eta)},
  };
}

FilmState initial_film(const config::ScenarioConfig& cfg) {
  FilmState film = make_film(cfg.geometry.x1_nodes, cfg.geometry.x1_length);
  const double amp = cfg.geometry.perturbation_amplitude;
  const double k =
      2.0 * M_PI * cfg.geometry.perturbation_mode / cfg.geometry.x1_length;
  for (std::size_t i = 0; i < film.size(); ++i)
    film.eta[i] = cfg.geometry.eta * (1.0 + amp * std::cos(k * film.x1[i]));
  return film;
}

lubrication::EvolveOptions evolve_options(const config::ScenarioConfig& cfg) {
  lubrication::EvolveOptions opts;
  opts.t_end = cfg.solver.t_end;
  opts.dt = cfg.solver.dt > 0.0 ? cfg.solver.dt : 1e-3;
  opts.n_column_nodes = cfg.geometry.column_nodes;
  opts.mode = cfg.solver.mode;
  opts.third_derivative = cfg.solver.third_derivative;
  opts.threads = cfg.solver.threads;
  opts.snapshot_every = cfg.solver.snapshot_every;
  opts.min_eta_floor = cfg.solver.min_eta_floor;
  opts.q2_profile = cfg.solver.q2_profile;
  opts.activity_profile = cfg.solver.activity_profile;
  return opts;
}

void write_snapshots(const std::string& stem,
                     const std::vector<FilmState>& snaps,
                     const csv::HeaderItems& header, RunResult& result) {
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const std::string path = stem + "_snapshot_" + std::to_string(k) + ".csv";
    csv::write_film(path, snaps[k], header);
    result.outputs.push_back(path);
  }
}

void run_flatfilm(const config::ScenarioConfig& cfg, const std::string& stem,
                  RunResult& result, json& report) {
  const auto header = material_header(cfg);
  ColumnProfile profile;
  if (!cfg.material.passive()) {
    profile = flatfilm::active_flatfilm_bvp(cfg.anchoring, cfg.geometry.eta,
                                            cfg.material,
                                            cfg.geometry.column_nodes);
    report["kind"] = "active_bvp";
  } else if (std::abs(cfg.anchoring.q1 - cfg.anchoring.q2) < 1e-12) {
    profile = flatfilm::trivial_flat_solution(cfg.anchoring, cfg.geometry.eta,
                                              cfg.material,
                                              cfg.geometry.column_nodes);
    report["kind"] = "trivial";
  } else {
    const auto roots = flatfilm::solve_compatibility(
        cfg.anchoring, cfg.geometry.eta, cfg.material);
    profile = flatfilm::compatibility_profile(roots, cfg.anchoring,
                                              cfg.geometry.eta, cfg.material,
                                              cfg.geometry.column_nodes);
    report["kind"] = "compatibility";
    report["c1"] = roots.c1;
    report["c2"] = roots.c2;
    report["residual_norm"] = roots.residual_norm;
    json all = json::array();
    for (const auto& r : roots.all_roots) all.push_back({r[0], r[1]});
    report["all_roots"] = all;
  }
  const std::string path = stem + "_profile.csv";
  csv::write_profile(path, profile, header);
  result.outputs.push_back(path);
}

void run_smallangle(const config::ScenarioConfig& cfg, const std::string& stem,
                    RunResult& result, json& report) {
  const auto header = material_header(cfg);
  const auto branches = smallangle::active_const_theta(cfg.material);
  const auto& sol = branches[0];
  report["q1"] = sol.q1;
  report["theta1_plus"] = branches[0].theta1;
  report["theta1_minus"] = branches[1].theta1;
  report["advection_constant"] =
      smallangle::advection_constant(sol, cfg.material);

  if (cfg.solver.t_end > 0.0) {
    smallangle::EvolveOptions opts;
    opts.t_end = cfg.solver.t_end;
    opts.dt = cfg.solver.dt;
    opts.min_eta_floor = cfg.solver.min_eta_floor;
    opts.snapshot_every = cfg.solver.snapshot_every;
    opts.advection = cfg.solver.advection;
    const auto traj = smallangle::evolve_modified_thinfilm(
        initial_film(cfg), sol, cfg.material, opts);
    const std::string series = stem + "_series.csv";
    csv::write_series(series, traj.times, traj.mass, traj.min_eta,
                      traj.max_eta, header);
    result.outputs.push_back(series);
    const std::string final_path = stem + "_final.csv";
    csv::write_film(final_path, traj.final_film, header);
    result.outputs.push_back(final_path);
    write_snapshots(stem, traj.snapshots, header, result);
  }
}

void run_lubrication(const config::ScenarioConfig& cfg, const std::string& stem,
                     RunResult& result, json& report) {
  const auto header = material_header(cfg);
  const auto opts = evolve_options(cfg);
  const auto traj =
      lubrication::evolve(initial_film(cfg), cfg.anchoring, cfg.material, opts);
  const std::string series = stem + "_series.csv";
  csv::write_series(series, traj.times, traj.mass, traj.min_eta, traj.max_eta,
                    header);
  result.outputs.push_back(series);
  const std::string final_path = stem + "_final.csv";
  csv::write_film(final_path, traj.final_field.film, header);
  result.outputs.push_back(final_path);
  const std::string field_path = stem + "_field.csv";
  csv::write_long_field(field_path, traj.final_field, header);
  result.outputs.push_back(field_path);
  write_snapshots(stem, traj.snapshots, header, result);
  double res = 0.0;
  for (double r : traj.final_field.residuals) res = std::max(res, r);
  report["max_column_residual"] = res;
}

void run_lep(const config::ScenarioConfig& cfg, const std::string& stem,
             RunResult& result, json& report) {
  const auto header = material_header(cfg);
  const auto model = lep::from_material(cfg.anchoring.q1, cfg.material);
  report["K"] = model.K;
  report["zeta_lep"] = model.zeta_lep;
  report["chi_lep"] = model.chi_lep;
  lep::EvolveOptions opts;
  opts.t_end = cfg.solver.t_end;
  opts.dt = cfg.solver.dt > 0.0 ? cfg.solver.dt : 1e-3;
  opts.n_column_nodes = cfg.geometry.column_nodes;
  opts.third_derivative =
      cfg.solver.third_derivative == lubrication::ThirdDerivative::fourth_order
          ? lep::ThirdDerivative::fourth_order
          : lep::ThirdDerivative::composed_centered;
  opts.snapshot_every = cfg.solver.snapshot_every;
  opts.min_eta_floor = cfg.solver.min_eta_floor;
  const auto traj = lep::lep_evolve(initial_film(cfg), cfg.anchoring.theta1,
                                    cfg.anchoring.theta2, model, opts);
  const std::string series = stem + "_series.csv";
  csv::write_series(series, traj.times, traj.mass, traj.min_eta, traj.max_eta,
                    header);
  result.outputs.push_back(series);
  const std::string final_path = stem + "_final.csv";
  csv::write_film(final_path, traj.final_film, header);
  result.outputs.push_back(final_path);
  write_snapshots(stem, traj.snapshots, header, result);
}

lubrication::LubricationField synthetic_field(const config::ScenarioConfig& cfg) {
  const auto& d = cfg.diagnostics;
  lubrication::LubricationField field;
  field.film = make_film(d.nx, cfg.geometry.x1_length);
  for (auto& e : field.film.eta) e = cfg.geometry.eta;
  field.columns.resize(d.nx);
  field.residuals.assign(d.nx, 0.0);
  const double x1c = 0.5 * cfg.geometry.x1_length;
  const double x3c = 0.5 * cfg.geometry.eta;
  for (std::size_t i = 0; i < d.nx; ++i) {
    ColumnProfile& col = field.columns[i];
    col.eta = cfg.geometry.eta;
    col.x3 = uniform_grid(cfg.geometry.eta, d.nz);
    col.theta.resize(d.nz);
    col.q.resize(d.nz);
    col.v1.assign(d.nz, 0.0);
    for (std::size_t j = 0; j < d.nz; ++j) {
      const double dx = field.film.x1[i] - x1c;
      const double dz = col.x3[j] - x3c;
      if (d.field == "isotropic_line") {
        col.q[j] = std::tanh(std::abs(dz) / d.core_width);
        col.theta[j] = cfg.anchoring.theta1;
      } else {
        const double r = std::hypot(dx, dz);
        col.q[j] = std::tanh(r / d.core_width);
        col.theta[j] = std::atan2(dz, dx);
      }
    }
  }
  return field;
}

void run_diagnostics(const config::ScenarioConfig& cfg, const std::string& stem,
                     RunResult& result, json& report) {
  const auto field = synthetic_field(cfg);
  const auto defects =
      diagnostics::detect_defects(field, cfg.diagnostics.q_threshold);
  const std::string path = stem + "_defects.csv";
  {
    std::ofstream out(path);
    out << "x1,x3,q_min,kind,winding\n";
    for (const auto& c : defects) {
      out << csv::format_double(c.x1) << ',' << csv::format_double(c.x3) << ','
          << csv::format_double(c.q_min) << ','
          << (c.kind == diagnostics::DefectCandidate::Kind::line ? "line"
                                                                 : "point")
          << ',' << (c.winding ? csv::format_double(*c.winding) : "") << '\n';
    }
  }
  result.outputs.push_back(path);
  const auto en = diagnostics::energies(field, cfg.material);
  report["bulk_energy"] = en.bulk;
  report["elastic_energy"] = en.elastic;
  report["defect_count"] = defects.size();
  if (!defects.empty()) {
    report["regularity_indicator"] =
        diagnostics::regularity_indicator(field, defects.front().x1,
                                          defects.front().x3);
  }
}

void run_crosscheck(const config::ScenarioConfig& cfg, const std::string& stem,
                    RunResult& result, json& report) {
  const auto header = material_header(cfg);
  AnchoringData bc = cfg.anchoring;
  bc.q2 = bc.q1;  // constant order parameter ties the two models together
  const double qc = bc.q1;

  lubrication::ColumnOptions copts;
  copts.n_nodes = cfg.geometry.column_nodes;
  copts.mode = lubrication::ColumnMode::constant_q;
  const auto eric = lubrication::column_bvp(cfg.geometry.eta,
                                            cfg.geometry.eta_xxx, bc,
                                            cfg.material, nullptr, copts);

  const auto model = lep::from_material(qc, cfg.material);
  lep::ColumnOptions lopts;
  lopts.n_nodes = cfg.geometry.column_nodes;
  const auto lepcol =
      lep::lep_column_bvp(cfg.geometry.eta, cfg.geometry.eta_xxx, bc.theta1,
                          bc.theta2, model, nullptr, lopts);

  double dev_theta = 0.0, dev_v1 = 0.0;
  for (std::size_t i = 0; i < eric.size(); ++i) {
    dev_theta = std::max(dev_theta, std::abs(eric.theta[i] - lepcol.theta[i]));
    dev_v1 = std::max(dev_v1, std::abs(eric.v1[i] - lepcol.v1[i]));
  }
  report["column_max_dev_theta"] = dev_theta;
  report["column_max_dev_v1"] = dev_v1;

  const std::string eric_path = stem + "_ericksen_column.csv";
  csv::write_profile(eric_path, eric, header);
  result.outputs.push_back(eric_path);
  const std::string lep_path = stem + "_lep_column.csv";
  csv::write_profile(lep_path, lepcol, header);
  result.outputs.push_back(lep_path);

  if (cfg.solver.t_end > 0.0) {
    auto opts = evolve_options(cfg);
    opts.mode = lubrication::ColumnMode::constant_q;
    const auto etraj = lubrication::evolve(initial_film(cfg), bc, cfg.material, opts);
    lep::EvolveOptions lopts2;
    lopts2.t_end = opts.t_end;
    lopts2.dt = opts.dt;
    lopts2.n_column_nodes = opts.n_column_nodes;
    lopts2.third_derivative =
        opts.third_derivative == lubrication::ThirdDerivative::fourth_order
            ? lep::ThirdDerivative::fourth_order
            : lep::ThirdDerivative::composed_centered;
    const auto ltraj = lep::lep_evolve(initial_film(cfg), bc.theta1, bc.theta2,
                                       model, lopts2);
    double dev_eta = 0.0;
    for (std::size_t i = 0; i < etraj.final_field.film.size(); ++i)
      dev_eta = std::max(dev_eta, std::abs(etraj.final_field.film.eta[i] -
                                           ltraj.final_film.eta[i]));
    report["trajectory_max_dev_eta"] = dev_eta;
    report["t_end"] = opts.t_end;
  }
}

}  // namespace

RunResult run(const config::ScenarioConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const std::string stem = (fs::path(out_dir) / cfg.output.prefix).string();
  RunResult result;
  json report;
  report["scenario"] = cfg.scenario;

  if (cfg.scenario == "flatfilm")
    run_flatfilm(cfg, stem, result, report);
  else if (cfg.scenario == "smallangle")
    run_smallangle(cfg, stem, result, report);
  else if (cfg.scenario == "lubrication")
    run_lubrication(cfg, stem, result, report);
  else if (cfg.scenario == "lep")
    run_lep(cfg, stem, result, report);
  else if (cfg.scenario == "diagnostics")
    run_diagnostics(cfg, stem, result, report);
  else if (cfg.scenario == "crosscheck")
    run_crosscheck(cfg, stem, result, report);
  else
    throw ConfigError("unknown scenario: " + cfg.scenario);

  json manifest;
  manifest["version"] = kVersion;
  manifest["scenario"] = cfg.scenario;
  manifest["report"] = report;
  manifest["config"] = json::parse(cfg.raw);
  json outputs = json::array();
  for (const auto& o : result.outputs) outputs.push_back(o);
  manifest["outputs"] = outputs;

  const std::string manifest_path = stem + "_manifest.json";
  std::ofstream out(manifest_path);
  out << manifest.dump(2) << "\n";
  result.outputs.push_back(manifest_path);
  return result;
}

}  // namespace actigel::scenario

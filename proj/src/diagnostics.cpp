#include "actigel/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "actigel/errors.hpp"

namespace actigel::diagnostics {

namespace {

struct Grid {
  const lubrication::LubricationField* field;
  std::size_t nx, nz;

  double q(std::size_t i, std::size_t j) const {
    return field->columns[i].q[j];
  }
  double theta(std::size_t i, std::size_t j) const {
    return field->columns[i].theta[j];
  }
  double x1(std::size_t i) const { return field->film.x1[i]; }
  double x3(std::size_t i, std::size_t j) const {
    return field->columns[i].x3[j];
  }
  std::size_t wrap_i(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(nx);
    return static_cast<std::size_t>((i % n + n) % n);
  }
};

Grid make_grid(const lubrication::LubricationField& field) {
  if (field.columns.empty())
    throw DomainError("diagnostics: field has no columns");
  const std::size_t nz = field.columns.front().size();
  for (const auto& c : field.columns)
    if (c.size() != nz)
      throw DomainError("diagnostics: columns must share the node count");
  return Grid{&field, field.columns.size(), nz};
}

// director angle difference wrapped to (-pi/2, pi/2]
double wrap_dtheta(double d) {
  const double pi = M_PI;
  d = std::fmod(d, pi);
  if (d > 0.5 * pi) d -= pi;
  if (d <= -0.5 * pi) d += pi;
  return d;
}

// vertex of the parabola through (-1, ql), (0, qc), (1, qr), clamped
double parabola_vertex(double ql, double qc, double qr) {
  const double denom = ql - 2.0 * qc + qr;
  if (std::abs(denom) < 1e-300) return 0.0;
  return std::clamp(0.5 * (ql - qr) / denom, -0.5, 0.5);
}

}  // namespace

std::vector<DefectCandidate> detect_defects(
    const lubrication::LubricationField& field, double q_threshold) {
  if (!(q_threshold > 0.0))
    throw DomainError("detect_defects: threshold must be positive");
  const Grid g = make_grid(field);
  const double thr2 = q_threshold * q_threshold;

  std::vector<char> is_min(g.nx * g.nz, 0);
  auto idx = [&](std::size_t i, std::size_t j) { return i * g.nz + j; };
  auto q2at = [&](std::size_t i, std::size_t j) {
    const double v = g.q(i, j);
    return v * v;
  };

  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.nz; ++j) {
      const double v = q2at(i, j);
      if (v >= thr2) continue;
      bool minimal = true;
      for (int di = -1; di <= 1 && minimal; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const auto jj = static_cast<std::ptrdiff_t>(j) + dj;
          if (jj < 0 || jj >= static_cast<std::ptrdiff_t>(g.nz)) continue;
          const std::size_t ii = g.wrap_i(static_cast<std::ptrdiff_t>(i) + di);
          if (q2at(ii, static_cast<std::size_t>(jj)) < v) {
            minimal = false;
            break;
          }
        }
      }
      if (minimal) is_min[idx(i, j)] = 1;
    }
  }

  // connected components (8-neighborhood, periodic in x1)
  std::vector<int> comp(g.nx * g.nz, -1);
  int ncomp = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> members;
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.nz; ++j) {
      if (!is_min[idx(i, j)] || comp[idx(i, j)] >= 0) continue;
      members.emplace_back();
      std::queue<std::pair<std::size_t, std::size_t>> bfs;
      bfs.emplace(i, j);
      comp[idx(i, j)] = ncomp;
      while (!bfs.empty()) {
        auto [ci, cj] = bfs.front();
        bfs.pop();
        members.back().emplace_back(ci, cj);
        for (int di = -1; di <= 1; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            const auto jj = static_cast<std::ptrdiff_t>(cj) + dj;
            if (jj < 0 || jj >= static_cast<std::ptrdiff_t>(g.nz)) continue;
            const std::size_t ii = g.wrap_i(static_cast<std::ptrdiff_t>(ci) + di);
            if (is_min[idx(ii, jj)] && comp[idx(ii, jj)] < 0) {
              comp[idx(ii, jj)] = ncomp;
              bfs.emplace(ii, static_cast<std::size_t>(jj));
            }
          }
        }
      }
      ++ncomp;
    }
  }

  const double hx = field.film.spacing();
  std::vector<DefectCandidate> out;
  for (const auto& cells : members) {
    const DefectCandidate::Kind kind = cells.size() >= 3
                                           ? DefectCandidate::Kind::line
                                           : DefectCandidate::Kind::point;
    for (const auto& [i, j] : cells) {
      DefectCandidate cand;
      cand.kind = kind;
      cand.q_min = std::abs(g.q(i, j));
      // sub-cell refinement on q^2
      const double ql = q2at(g.wrap_i(static_cast<std::ptrdiff_t>(i) - 1), j);
      const double qr = q2at(g.wrap_i(static_cast<std::ptrdiff_t>(i) + 1), j);
      double dx = parabola_vertex(ql, q2at(i, j), qr);
      double dz = 0.0;
      if (j > 0 && j + 1 < g.nz)
        dz = parabola_vertex(q2at(i, j - 1), q2at(i, j), q2at(i, j + 1));
      const double hz = g.nz > 1 ? g.x3(i, 1) - g.x3(i, 0) : 0.0;
      cand.x1 = g.x1(i) + dx * hx;
      cand.x3 = g.x3(i, j) + dz * hz;
      cand.winding = winding_number(field, g.x1(i), g.x3(i, j), 2, q_threshold);
      out.push_back(cand);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.q_min < b.q_min;
  });
  return out;
}

namespace {

// nearest cell indices to a physical point
std::pair<std::size_t, std::size_t> locate(const Grid& g, double x1, double x3) {
  const double hx = g.field->film.spacing();
  const double L = g.field->film.length;
  double xr = std::fmod(x1, L);
  if (xr < 0.0) xr += L;
  auto i = static_cast<std::size_t>(std::lround(xr / hx)) % g.nx;
  const auto& col = g.field->columns[i];
  const double hz = col.x3.size() > 1 ? col.x3[1] - col.x3[0] : 1.0;
  auto j = static_cast<std::size_t>(
      std::clamp(std::lround(x3 / hz), 0L, static_cast<long>(g.nz - 1)));
  return {i, j};
}

}  // namespace

double regularity_indicator(const lubrication::LubricationField& field,
                            double x1, double x3, int radius_cells) {
  const Grid g = make_grid(field);
  auto [ic, jc] = locate(g, x1, x3);
  const double hx = field.film.spacing();

  double worst = 0.0;
  for (int di = -radius_cells; di <= radius_cells; ++di) {
    for (int dj = -radius_cells; dj <= radius_cells; ++dj) {
      const auto jj = static_cast<std::ptrdiff_t>(jc) + dj;
      if (jj < 1 || jj + 1 >= static_cast<std::ptrdiff_t>(g.nz)) continue;
      const std::size_t i = g.wrap_i(static_cast<std::ptrdiff_t>(ic) + di);
      const auto j = static_cast<std::size_t>(jj);
      const double hz = g.x3(i, 1) - g.x3(i, 0);
      const std::size_t ip = g.wrap_i(static_cast<std::ptrdiff_t>(i) + 1);
      const std::size_t im = g.wrap_i(static_cast<std::ptrdiff_t>(i) - 1);
      const double dth_x1 = wrap_dtheta(g.theta(ip, j) - g.theta(im, j)) / (2.0 * hx);
      const double dth_x3 =
          wrap_dtheta(g.theta(i, j + 1) - g.theta(i, j - 1)) / (2.0 * hz);
      const double grad = std::hypot(dth_x1, dth_x3);
      const double qv = std::abs(g.q(i, j));
      worst = std::max(worst, std::sqrt(qv) * grad);
    }
  }
  return worst;
}

std::optional<double> winding_number(const lubrication::LubricationField& field,
                                     double x1, double x3, int radius_cells,
                                     double q_threshold) {
  const Grid g = make_grid(field);
  auto [ic, jc] = locate(g, x1, x3);
  const int r = radius_cells;

  // square ring, counterclockwise
  std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> ring;
  for (int di = -r; di <= r; ++di) ring.emplace_back(di, -r);
  for (int dj = -r + 1; dj <= r; ++dj) ring.emplace_back(r, dj);
  for (int di = r - 1; di >= -r; --di) ring.emplace_back(di, r);
  for (int dj = r - 1; dj > -r; --dj) ring.emplace_back(-r, dj);

  double total = 0.0;
  double prev = 0.0;
  bool first = true;
  for (std::size_t k = 0; k <= ring.size(); ++k) {
    const auto& [di, dj] = ring[k % ring.size()];
    const auto jj = static_cast<std::ptrdiff_t>(jc) + dj;
    if (jj < 0 || jj >= static_cast<std::ptrdiff_t>(g.nz)) return std::nullopt;
    const std::size_t i = g.wrap_i(static_cast<std::ptrdiff_t>(ic) + di);
    const auto j = static_cast<std::size_t>(jj);
    if (std::abs(g.q(i, j)) < q_threshold) return std::nullopt;
    const double th = g.theta(i, j);
    if (!first) total += wrap_dtheta(th - prev);
    prev = th;
    first = false;
  }
  return total / (2.0 * M_PI);
}

Energies energies(const lubrication::LubricationField& field,
                  const MaterialParams& p) {
  const double hx = field.film.spacing();
  Energies out;
  for (const auto& col : field.columns) {
    const std::size_t n = col.size();
    if (n < 2) continue;
    double bulk = 0.0, elastic = 0.0;
    std::vector<double> fb(n), el(n);
    for (std::size_t j = 0; j < n; ++j) {
      fb[j] = bulk_energy_density(col.q[j], p);
      const std::size_t jl = j == 0 ? 0 : j - 1;
      const std::size_t jr = j + 1 == n ? j : j + 1;
      const double dz = col.x3[jr] - col.x3[jl];
      const double dq = (col.q[jr] - col.q[jl]) / dz;
      const double dth = (col.theta[jr] - col.theta[jl]) / dz;
      el[j] = p.l1 * (0.75 * dq * dq + 2.0 * col.q[j] * col.q[j] * dth * dth);
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double dz = col.x3[j + 1] - col.x3[j];
      bulk += 0.5 * (fb[j] + fb[j + 1]) * dz;
      elastic += 0.5 * (el[j] + el[j + 1]) * dz;
    }
    out.bulk += bulk * hx;
    out.elastic += elastic * hx;
  }
  out.bulk /= field.film.length;
  out.elastic /= field.film.length;
  return out;
}

}  // namespace actigel::diagnostics

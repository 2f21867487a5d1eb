#ifndef ACTIGEL_PROFILE_HPP
#define ACTIGEL_PROFILE_HPP

#include <cstddef>
#include <vector>

namespace actigel {

/** Depth-resolved state on one vertical column of the film.
 *
 * x3 runs from exactly 0 to exactly eta; v1[0] = 0 (no slip).
 */
struct ColumnProfile {
  std::vector<double> x3;
  std::vector<double> theta;
  std::vector<double> q;
  std::vector<double> v1;
  double eta = 1.0;

  std::size_t size() const { return x3.size(); }
};

// Uniform grid of n nodes on [0, eta] with exact endpoints.
std::vector<double> uniform_grid(double eta, std::size_t n);

/** Film thickness on a uniform periodic grid x1[i] = i * length / n. */
struct FilmState {
  std::vector<double> x1;
  std::vector<double> eta;
  double length = 1.0;
  double time = 0.0;

  std::size_t size() const { return x1.size(); }
  double spacing() const { return length / static_cast<double>(x1.size()); }
  double mass() const;
  double min_eta() const;
  double max_eta() const;
};

FilmState make_film(std::size_t n, double length);

/** Scalar time series plus optional snapshots of a film evolution. */
struct FilmTrajectory {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> min_eta;
  std::vector<double> max_eta;
  std::vector<FilmState> snapshots;
  FilmState final_film;
};

}  // namespace actigel

#endif

#include "actigel/profile.hpp"

#include <algorithm>

namespace actigel {

std::vector<double> uniform_grid(double eta, std::size_t n) {
  std::vector<double> x(n);
  const double h = eta / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) * h;
  x.front() = 0.0;
  x.back() = eta;
  return x;
}

double FilmState::mass() const {
  double s = 0.0;
  for (double e : eta) s += e;
  return spacing() * s;
}

double FilmState::min_eta() const {
  return *std::min_element(eta.begin(), eta.end());
}

double FilmState::max_eta() const {
  return *std::max_element(eta.begin(), eta.end());
}

FilmState make_film(std::size_t n, double length) {
  FilmState f;
  f.length = length;
  f.x1.resize(n);
  f.eta.assign(n, 1.0);
  const double h = length / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) f.x1[i] = static_cast<double>(i) * h;
  return f;
}

}  // namespace actigel

#ifndef ACTIGEL_CSVIO_HPP
#define ACTIGEL_CSVIO_HPP

#include <string>
#include <utility>
#include <vector>

#include "actigel/lubrication.hpp"
#include "actigel/profile.hpp"

namespace actigel::csv {

// shortest round-trip representation of a double
std::string format_double(double v);

using HeaderItems = std::vector<std::pair<std::string, std::string>>;

// columns x3, theta, q, v1, with '#'-prefixed key=value header lines
void write_profile(const std::string& path, const ColumnProfile& col,
                   const HeaderItems& header = {});

// columns x1, eta
void write_film(const std::string& path, const FilmState& film,
                const HeaderItems& header = {});

// columns time, mass, min_eta, max_eta
void write_series(const std::string& path, const std::vector<double>& times,
                  const std::vector<double>& mass,
                  const std::vector<double>& min_eta,
                  const std::vector<double>& max_eta,
                  const HeaderItems& header = {});

// long format: x1, x3, theta, q, v1
void write_long_field(const std::string& path,
                      const lubrication::LubricationField& field,
                      const HeaderItems& header = {});

}  // namespace actigel::csv

#endif

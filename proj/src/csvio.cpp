#include "actigel/csvio.hpp"

#include <cstdio>
#include <fstream>

#include "actigel/errors.hpp"

namespace actigel::csv {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open output file: " + path);
  return out;
}

void write_header(std::ofstream& out, const HeaderItems& header) {
  for (const auto& [k, v] : header) out << "# " << k << "=" << v << "\n";
}

}  // namespace

void write_profile(const std::string& path, const ColumnProfile& col,
                   const HeaderItems& header) {
  auto out = open_out(path);
  write_header(out, header);
  out << "x3,theta,q,v1\n";
  for (std::size_t i = 0; i < col.size(); ++i) {
    out << format_double(col.x3[i]) << ',' << format_double(col.theta[i]) << ','
        << format_double(col.q.empty() ? 0.0 : col.q[i]) << ','
        << format_double(col.v1[i]) << '\n';
  }
}

void write_film(const std::string& path, const FilmState& film,
                const HeaderItems& header) {
  auto out = open_out(path);
  write_header(out, header);
  out << "# time=" << format_double(film.time) << "\n";
  out << "x1,eta\n";
  for (std::size_t i = 0; i < film.size(); ++i)
    out << format_double(film.x1[i]) << ',' << format_double(film.eta[i]) << '\n';
}

void write_series(const std::string& path, const std::vector<double>& times,
                  const std::vector<double>& mass,
                  const std::vector<double>& min_eta,
                  const std::vector<double>& max_eta,
                  const HeaderItems& header) {
  auto out = open_out(path);
  write_header(out, header);
  out << "time,mass,min_eta,max_eta\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << format_double(times[i]) << ',' << format_double(mass[i]) << ','
        << format_double(min_eta[i]) << ',' << format_double(max_eta[i]) << '\n';
  }
}

void write_long_field(const std::string& path,
                      const lubrication::LubricationField& field,
                      const HeaderItems& header) {
  auto out = open_out(path);
  write_header(out, header);
  out << "# time=" << format_double(field.film.time) << "\n";
  out << "x1,x3,theta,q,v1\n";
  for (std::size_t i = 0; i < field.columns.size(); ++i) {
    const auto& col = field.columns[i];
    for (std::size_t j = 0; j < col.size(); ++j) {
      out << format_double(field.film.x1[i]) << ',' << format_double(col.x3[j])
          << ',' << format_double(col.theta[j]) << ','
          << format_double(col.q.empty() ? 0.0 : col.q[j]) << ','
          << format_double(col.v1[j]) << '\n';
    }
  }
}

}  // namespace actigel::csv

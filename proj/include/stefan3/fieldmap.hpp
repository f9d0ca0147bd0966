#pragma once

// Temperature samples on an (x, t) grid and their CSV export.
//
// x_j = x_max j / (nx - 1), j = 0..nx-1; t_i = t_max (i + 1) / nt, i = 0..nt-1
// (the similarity solution is only defined for t > 0).

#include <charconv>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "stefan3/errors.hpp"
#include "stefan3/solver.hpp"

namespace stefan3 {

struct FieldGrid {
  double x_max = 0, t_max = 0;
  std::size_t nx = 0, nt = 0;
  std::vector<double> x, t;
  std::vector<double> values;  // values[i * nx + j] = u(x_j, t_i)
  std::vector<Fronts> fronts;  // per t_i

  double at(std::size_t i, std::size_t j) const { return values[i * nx + j]; }
};

inline FieldGrid field_map(const ThreePhaseSolution& sol, double x_max, double t_max, std::size_t nx,
                           std::size_t nt) {
  if (nx < 2 || nt < 2) throw ValidationError("GRID_TOO_SMALL", "nx and nt must be >= 2");
  if (!(x_max > 0) || !(t_max > 0)) throw ValidationError("GRID_EXTENT", "xmax and tmax must be > 0");
  FieldGrid g{x_max, t_max, nx, nt, {}, {}, {}, {}};
  g.x.resize(nx);
  g.t.resize(nt);
  for (std::size_t j = 0; j < nx; ++j) g.x[j] = x_max * static_cast<double>(j) / static_cast<double>(nx - 1);
  for (std::size_t i = 0; i < nt; ++i) g.t[i] = t_max * static_cast<double>(i + 1) / static_cast<double>(nt);
  g.values.resize(nx * nt);
  g.fronts.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    g.fronts[i] = free_boundaries(sol, g.t[i]);
    for (std::size_t j = 0; j < nx; ++j) g.values[i * nx + j] = evaluate_temperature(sol, g.x[j], g.t[i]);
  }
  return g;
}

namespace detail {

// Shortest decimal that round-trips to the same double.
inline void put_number(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace detail

/// CSV with header "x,t,temperature", rows ordered by t then x.
inline std::string field_csv(const FieldGrid& g) {
  std::string out = "x,t,temperature\n";
  for (std::size_t i = 0; i < g.nt; ++i) {
    for (std::size_t j = 0; j < g.nx; ++j) {
      detail::put_number(out, g.x[j]);
      out += ',';
      detail::put_number(out, g.t[i]);
      out += ',';
      detail::put_number(out, g.at(i, j));
      out += '\n';
    }
  }
  return out;
}

/// CSV with header "t,x2,x1".
inline std::string fronts_csv(const FieldGrid& g) {
  std::string out = "t,x2,x1\n";
  for (std::size_t i = 0; i < g.nt; ++i) {
    detail::put_number(out, g.t[i]);
    out += ',';
    detail::put_number(out, g.fronts[i].x2);
    out += ',';
    detail::put_number(out, g.fronts[i].x1);
    out += '\n';
  }
  return out;
}

/// "out.csv" -> "out.fronts.csv"; other names get ".fronts.csv" appended.
inline std::string fronts_path(const std::string& path) {
  const std::string ext = ".csv";
  if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
    return path.substr(0, path.size() - ext.size()) + ".fronts.csv";
  }
  return path + ".fronts.csv";
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

/// Writes the field CSV to `path` and the fronts CSV next to it; returns the fronts path.
inline std::string write_field_map(const FieldGrid& g, const std::string& path) {
  write_file(path, field_csv(g));
  const std::string fp = fronts_path(path);
  write_file(fp, fronts_csv(g));
  return fp;
}

}  // namespace stefan3

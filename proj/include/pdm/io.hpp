#pragma once

// CSV and JSON serialization. Numbers are written with 17 significant digits
// and JSON keys keep insertion order, so identical inputs give identical bytes.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdm/banded_matrix.hpp"
#include "pdm/classical_dynamics.hpp"
#include "pdm/point_transform.hpp"
#include "pdm/spectral_solver.hpp"

namespace pdm::io {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json(std::ostream& os, Json const& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool scalars = true;
      for (auto const& v : j)
        if (v.is_structured()) scalars = false;
      if (scalars) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent, depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      // Non-finite values are not valid JSON numbers; emit them as strings.
      if (!std::isfinite(v)) os << '"' << format_double(v) << '"';
      else os << format_double(v);
      return;
    }
    default:
      os << j.dump();
  }
}

inline std::string csv_field(std::string const& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_string(Json const& j) {
  std::ostringstream os;
  detail::write_json(os, j, 2, 0);
  os << "\n";
  return os.str();
}

inline void write_text(std::string const& path, std::string const& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
}

/// RFC 4180 table with CRLF line ends.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& row(std::vector<std::string> cells) {
    rows_.push_back(std::move(cells));
    return *this;
  }
  CsvTable& row(std::span<const double> values) {
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(format_double(v));
    return row(std::move(cells));
  }

  std::string str() const {
    std::string out;
    auto line = [&out](std::vector<std::string> const& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_field(cells[i]);
      }
      out += "\r\n";
    };
    line(header_);
    for (auto const& r : rows_) line(r);
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline Json to_json(GridMeta const& g) {
  return Json{{"n_points", g.n_points}, {"spacing", g.spacing}, {"min", g.lo}, {"max", g.hi}};
}

inline Json to_json(SpectrumResult const& s) {
  Json j;
  j["solver"] = s.solver;
  j["grid"] = to_json(s.grid);
  j["eigenvalues"] = s.eigenvalues;
  j["residuals"] = s.residuals;
  j["operator_norm"] = s.operator_norm;
  return j;
}

inline Json to_json(GriddedWavefunction const& w) {
  Json re = Json::array(), im = Json::array();
  for (auto const& v : w.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return Json{{"measure", to_string(w.measure)}, {"grid", w.grid}, {"re", re}, {"im", im}};
}

inline std::string wavefunction_csv(GriddedWavefunction const& w) {
  CsvTable t({"grid", "re", "im"});
  for (std::size_t i = 0; i < w.grid.size(); ++i) {
    const double row[3] = {w.grid[i], w.values[i].real(), w.values[i].imag()};
    t.row(row);
  }
  return t.str();
}

inline std::string map_csv(TransformMap const& m) {
  CsvTable t({"x", "q", "jac"});
  for (std::size_t i = 0; i < m.x_grid.size(); ++i) {
    const double row[3] = {m.x_grid[i], m.q_of_x[i], m.jac[i]};
    t.row(row);
  }
  return t.str();
}

/// Coordinate list (i, j, re, im) of the stored band.
template <class T>
std::string operator_coo_csv(BandedMatrix<T> const& a) {
  CsvTable t({"i", "j", "re", "im"});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = a.band_begin(i); j <= a.band_end(i); ++j) {
      const complex v = a(i, j);
      if (v == complex{}) continue;
      t.row({std::to_string(i), std::to_string(j), format_double(v.real()), format_double(v.imag())});
    }
  return t.str();
}

inline std::string trajectory_csv(TrajectoryResult const& r) {
  const std::size_t d = r.samples.empty() ? 0 : r.samples.front().x.size();
  std::vector<std::string> header{"t"};
  for (std::size_t k = 0; k < d; ++k) header.push_back("x" + std::to_string(k + 1));
  for (std::size_t k = 0; k < d; ++k) header.push_back("P" + std::to_string(k + 1));
  header.push_back("E");
  CsvTable t(header);
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    std::vector<double> row{r.samples[i].t};
    row.insert(row.end(), r.samples[i].x.begin(), r.samples[i].x.end());
    row.insert(row.end(), r.samples[i].P.begin(), r.samples[i].P.end());
    row.push_back(r.energies[i]);
    t.row(row);
  }
  return t.str();
}

inline Json to_json(TrajectoryResult const& r) {
  Json samples = Json::array();
  for (std::size_t i = 0; i < r.samples.size(); ++i)
    samples.push_back(Json{{"t", r.samples[i].t}, {"x", r.samples[i].x}, {"P", r.samples[i].P}, {"E", r.energies[i]}});
  Json j{{"scheme", to_string(r.scheme)}, {"dt", r.dt}, {"drift", r.drift}, {"truncated", r.truncated}};
  if (r.truncated) j["diagnostic"] = r.diagnostic;
  j["samples"] = samples;
  return j;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string const& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace pdm::io

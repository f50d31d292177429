#ifndef PHOTOSPIN_IO_HPP
#define PHOTOSPIN_IO_HPP

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "photospin/grid.hpp"

namespace photospin {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void ensure_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw IoError(std::string("non-finite value in output: ") + what);
}

// 17 significant digits: exact round trip for IEEE 754 doubles.
inline std::string format_double(double v) {
  ensure_finite(v, "numeric field");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline nlohmann::json json_complex(const Complex& z) {
  ensure_finite(z.real(), "complex re");
  ensure_finite(z.imag(), "complex im");
  return nlohmann::json::array({z.real(), z.imag()});
}

inline nlohmann::json json_cvec(const CVec3& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) a.push_back(json_complex(v(i)));
  return a;
}

inline nlohmann::json json_cvec(const CVec6& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < 6; ++i) a.push_back(json_complex(v(i)));
  return a;
}

inline nlohmann::json json_vec(const Vec3& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    ensure_finite(v(i), "vector entry");
    a.push_back(v(i));
  }
  return a;
}

// RFC-4180 field quoting: quote when the field contains comma, quote or CR/LF.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

inline void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path);
  f << content;
  if (!f) throw IoError("failed writing output file: " + path);
}

// ---- flat binary grid layout ----
// header: magic "PSGF", u32 version, i32 dims[3], f64 origin[3],
// f64 spacing[3], u8 periodic, u8 representation tag, f64 time;
// payload: per node, little-endian f64 interleaved re/im for the 6 components.

inline void write_grid_binary(const std::string& path, const SpinorGridField& field) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path);
  auto put = [&](const void* p, std::size_t n) {
    f.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  };
  put("PSGF", 4);
  const std::uint32_t version = 1;
  put(&version, 4);
  for (int d = 0; d < 3; ++d) {
    const std::int32_t n = field.grid.dims[static_cast<std::size_t>(d)];
    put(&n, 4);
  }
  for (int d = 0; d < 3; ++d) {
    const double o = field.grid.origin(d);
    put(&o, 8);
  }
  for (int d = 0; d < 3; ++d) {
    const double s = field.grid.spacing(d);
    put(&s, 8);
  }
  const std::uint8_t periodic = field.grid.periodic ? 1 : 0;
  const std::uint8_t rep = field.rep == Representation::Chiral ? 0 : 1;
  put(&periodic, 1);
  put(&rep, 1);
  put(&field.time, 8);
  for (const CVec6& v : field.values)
    for (int c = 0; c < 6; ++c) {
      const double re = v(c).real(), im = v(c).imag();
      put(&re, 8);
      put(&im, 8);
    }
  if (!f) throw IoError("failed writing grid file: " + path);
}

inline SpinorGridField read_grid_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open grid file: " + path);
  auto get = [&](void* p, std::size_t n) {
    f.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!f) throw IoError("truncated grid file: " + path);
  };
  char magic[4];
  get(magic, 4);
  if (std::memcmp(magic, "PSGF", 4) != 0) throw IoError("not a grid file: " + path);
  std::uint32_t version = 0;
  get(&version, 4);
  if (version != 1) throw IoError("unsupported grid file version");
  Grid g;
  for (int d = 0; d < 3; ++d) {
    std::int32_t n = 0;
    get(&n, 4);
    g.dims[static_cast<std::size_t>(d)] = n;
  }
  for (int d = 0; d < 3; ++d) get(&g.origin(d), 8);
  for (int d = 0; d < 3; ++d) get(&g.spacing(d), 8);
  std::uint8_t periodic = 0, rep = 0;
  get(&periodic, 1);
  get(&rep, 1);
  g.periodic = periodic != 0;
  double time = 0.0;
  get(&time, 8);
  g.validate();
  SpinorGridField out =
      make_field(g, rep == 0 ? Representation::Chiral : Representation::Standard, time);
  for (CVec6& v : out.values)
    for (int c = 0; c < 6; ++c) {
      double re = 0.0, im = 0.0;
      get(&re, 8);
      get(&im, 8);
      v(c) = Complex(re, im);
    }
  return out;
}

// CSV serialization for small grids: one row per node.
inline std::string grid_to_csv(const SpinorGridField& field) {
  std::vector<std::string> head = {"i", "j", "k", "x1", "x2", "x3"};
  for (int c = 0; c < 6; ++c) {
    head.push_back("re_c" + std::to_string(c));
    head.push_back("im_c" + std::to_string(c));
  }
  std::string out = csv_row(head);
  const Grid& g = field.grid;
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        const Vec3 x = g.point(i, j, k);
        std::vector<std::string> row = {std::to_string(i),      std::to_string(j),
                                        std::to_string(k),      format_double(x(0)),
                                        format_double(x(1)),    format_double(x(2))};
        const CVec6& v = field.at(i, j, k);
        for (int c = 0; c < 6; ++c) {
          row.push_back(format_double(v(c).real()));
          row.push_back(format_double(v(c).imag()));
        }
        out += csv_row(row);
      }
  return out;
}

}  // namespace photospin

#endif

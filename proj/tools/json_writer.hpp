#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace mcmv_cli {

using Json = nlohmann::ordered_json;

inline Json complex_pair(std::complex<double> z) { return Json::array({std::real(z), std::imag(z)}); }

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

// Keys in insertion order, floats with 17 significant digits, two-space indent.
inline void write_json(const Json& j, std::string& out, int depth = 0) {
  const std::string pad(2 * depth, ' '), inner(2 * depth + 2, ' ');
  switch (j.type()) {
  case Json::value_t::object: {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(it.key()).dump() + ": ";
      write_json(it.value(), out, depth + 1);
    }
    out += "\n" + pad + "}";
    return;
  }
  case Json::value_t::array: {
    if (j.empty()) {
      out += "[]";
      return;
    }
    bool flat = true;
    for (const Json& e : j) flat = flat && e.is_primitive();
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        write_json(j[i], out, depth + 1);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += inner;
      write_json(j[i], out, depth + 1);
    }
    out += "\n" + pad + "]";
    return;
  }
  case Json::value_t::number_float:
    out += format_double(j.get<double>());
    return;
  default:
    out += j.dump();
  }
}

inline std::string to_text(const Json& j) {
  std::string s;
  write_json(j, s);
  s += "\n";
  return s;
}

} // namespace mcmv_cli

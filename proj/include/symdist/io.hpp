#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "symdist/boxes.hpp"

namespace symdist {

namespace detail {

inline cplx parse_entry(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw Error(ErrorKind::Parse, where + ": expected a number or [re, im]");
}

inline HermitianMatrix parse_matrix(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, field + ": expected a non-empty array of rows");
  const int d = static_cast<int>(j.size());
  CMat m(d, d);
  for (int r = 0; r < d; ++r) {
    const std::string row = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != d)
      throw Error(ErrorKind::Parse, row + ": expected " + std::to_string(d) + " entries");
    for (int c = 0; c < d; ++c) m(r, c) = parse_entry(j[r][c], row + "[" + std::to_string(c) + "]");
  }
  try {
    return HermitianMatrix(m);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, field + ": " + e.what());
  }
}

inline nlohmann::json matrix_json(const HermitianMatrix& h) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < h.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < h.dim(); ++c) row.push_back({h(r, c).real(), h(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace detail

/// {"p": number, "rho0": [[[re, im], ...], ...], "rho1": ...}; real entries may be bare numbers.
inline QuantumBox box_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "box: expected a JSON object");
  for (const char* f : {"p", "rho0", "rho1"})
    if (!j.contains(f)) throw Error(ErrorKind::Parse, std::string(f) + ": missing field");
  if (!j["p"].is_number()) throw Error(ErrorKind::Parse, "p: expected a number");
  const HermitianMatrix r0 = detail::parse_matrix(j["rho0"], "rho0");
  const HermitianMatrix r1 = detail::parse_matrix(j["rho1"], "rho1");
  if (r0.dim() != r1.dim()) throw Error(ErrorKind::Parse, "rho1: dimension differs from rho0");
  return make_box(j["p"].get<double>(), r0, r1);
}

inline QuantumBox parse_box(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("box: ") + e.what());
  }
  return box_from_json(j);
}

inline QuantumBox load_box(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open box file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_box(ss.str());
}

inline nlohmann::json box_to_json(const QuantumBox& b) {
  return {{"p", b.p}, {"rho0", detail::matrix_json(b.rho0)}, {"rho1", detail::matrix_json(b.rho1)}};
}

/// "M,q" with M a number or "inf".
inline GoldenUnit parse_golden(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::Parse, "golden: expected M,q");
  const std::string ms = s.substr(0, comma), qs = s.substr(comma + 1);
  char* end = nullptr;
  const double m = std::strtod(ms.c_str(), &end);
  if (end == ms.c_str() || *end != '\0') throw Error(ErrorKind::Parse, "golden: M is not a number");
  const double q = std::strtod(qs.c_str(), &end);
  if (end == qs.c_str() || *end != '\0') throw Error(ErrorKind::Parse, "golden: q is not a number");
  return {std::isinf(m) ? ExtReal::infinity() : ExtReal(m), q};
}

}  // namespace symdist

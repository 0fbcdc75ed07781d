#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "symdist/tasks.hpp"

namespace symdist {

enum class Family { GadGamma, GadPhi, ConversionPhi };

inline Family family_from_string(const std::string& s) {
  if (s == "gad-gamma") return Family::GadGamma;
  if (s == "gad-phi") return Family::GadPhi;
  if (s == "conversion-phi") return Family::ConversionPhi;
  throw Error(ErrorKind::ParameterRange, "unknown family '" + s + "' (gad-gamma, gad-phi, conversion-phi)");
}

inline const char* to_string(Family f) {
  switch (f) {
    case Family::GadGamma: return "gad-gamma";
    case Family::GadPhi: return "gad-phi";
    case Family::ConversionPhi: return "conversion-phi";
  }
  return "?";
}

struct SweepSpec {
  Family family = Family::GadGamma;
  double N = 0.1, gamma = 0.25, q = 1.0 / 3, eps = 0.1;
  double gamma1 = 0.5, N1 = 0.3, gamma2 = 0.25, N2 = 0.1, q1 = 1.0 / 3, q2 = 0.25;
  Regime conversion_regime = Regime::CptpA;
  double start = 0.0, stop = 1.0;
  int steps = 41;
  std::vector<std::string> quantities;
  int threads = 0;  // 0: hardware concurrency

  /// Grid and quantity defaults per family.
  static SweepSpec defaults(Family f) {
    SweepSpec s;
    s.family = f;
    if (f == Family::GadGamma) {
      s.quantities = {"xi_min", "xi_max", "sd", "xi_max_star"};
    } else if (f == Family::GadPhi) {
      s.stop = std::numbers::pi / 2;
      s.quantities = {"xi_min", "xi_max", "sd", "xi_max_star"};
    } else {
      s.stop = std::numbers::pi / 2;
      s.quantities = {"min_conversion_error"};
    }
    return s;
  }

  /// key=value override; false for an unknown key.
  bool set(const std::string& key, double v) {
    std::map<std::string, double*> f = {{"N", &N},         {"gamma", &gamma},   {"q", &q},   {"eps", &eps},
                                        {"gamma1", &gamma1}, {"N1", &N1},       {"gamma2", &gamma2},
                                        {"N2", &N2},       {"q1", &q1},         {"q2", &q2}, {"start", &start},
                                        {"stop", &stop}};
    auto it = f.find(key);
    if (it == f.end()) return false;
    *it->second = v;
    return true;
  }

  void validate() const {
    if (steps < 2) throw Error(ErrorKind::ParameterRange, "grid needs at least 2 steps");
    auto unit = [](double x, const char* n) {
      if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::ParameterRange, std::string(n) + " outside [0,1]");
    };
    unit(N, "N");
    unit(gamma, "gamma");
    unit(q, "q");
    unit(gamma1, "gamma1");
    unit(N1, "N1");
    unit(gamma2, "gamma2");
    unit(N2, "N2");
    unit(q1, "q1");
    unit(q2, "q2");
    if (!(eps >= 0.0)) throw Error(ErrorKind::ParameterRange, "eps must be >= 0");
    if (family == Family::GadGamma && (start < 0.0 || stop > 1.0))
      throw Error(ErrorKind::ParameterRange, "gamma grid outside [0,1]");
    if (quantities.empty()) throw Error(ErrorKind::ParameterRange, "no quantities requested");
  }
};

struct SweepResult {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> diagnostics;  // "row,column,message" for cells stored as nan
};

/// e^{i phi X} h e^{-i phi X}
inline HermitianMatrix rotate_x(const HermitianMatrix& h, double phi) {
  const CMat u = std::cos(phi) * CMat::Identity(2, 2) + cplx(0.0, std::sin(phi)) * pauli_x().mat();
  return HermitianMatrix(CMat(u * h.mat() * u.adjoint()), 1e-9);
}

inline QuantumBox gad_box(double q, double gamma, double n, double phi = 0.0) {
  const CpMap a = gad_channel(gamma, n);
  const HermitianMatrix r0 = a.apply(HermitianMatrix::basis_projector(2, 0));
  HermitianMatrix r1 = a.apply(HermitianMatrix::basis_projector(2, 1));
  if (phi != 0.0) r1 = rotate_x(r1, phi);
  return {q, r0, r1};
}

namespace detail {

inline double ext_to_double(const ExtReal& x) { return x.is_inf() ? INFINITY : x.value(); }

inline double sweep_quantity(const std::string& name, const SweepSpec& s, double x) {
  if (s.family == Family::ConversionPhi) {
    const QuantumBox src = gad_box(s.q1, s.gamma1, s.N1);
    const QuantumBox tgt = gad_box(s.q2, s.gamma2, s.N2, x);
    if (name == "min_conversion_error") return ext_to_double(min_conversion_error(src, tgt, s.conversion_regime).value);
    if (name == "min_conversion_error_cptpA") return ext_to_double(min_conversion_error(src, tgt, Regime::CptpA).value);
    if (name == "min_conversion_error_cds") return ext_to_double(min_conversion_error(src, tgt, Regime::Cds).value);
    if (name == "target_sd") return ext_to_double(sd(tgt));
    throw Error(ErrorKind::ParameterRange, "quantity '" + name + "' not available for conversion-phi");
  }
  const QuantumBox b = s.family == Family::GadGamma ? gad_box(s.q, x, s.N) : gad_box(s.q, s.gamma, s.N, x);
  if (name == "xi_min") return ext_to_double(xi_min(b.rho0, b.rho1));
  if (name == "xi_max") return ext_to_double(xi_max(b.rho0, b.rho1));
  if (name == "sd") return ext_to_double(sd(b));
  if (name == "xi_max_star") return ext_to_double(xi_max_star(b));
  if (name == "p_err") return p_err(b);
  if (name == "chernoff") return ext_to_double(chernoff(b.rho0, b.rho1));
  if (name == "distill_approx_cptpA") return ext_to_double(distill_approx(b, s.eps, Regime::CptpA).value);
  if (name == "distill_approx_cds") return ext_to_double(distill_approx(b, s.eps, Regime::Cds).value);
  if (name == "cost_approx_cptpA") return ext_to_double(cost_approx(b, s.eps, Regime::CptpA).value);
  if (name == "cost_approx_cds") return ext_to_double(cost_approx(b, s.eps, Regime::Cds).value);
  throw Error(ErrorKind::ParameterRange, "unknown quantity '" + name + "'");
}

inline double grid_point(const SweepSpec& s, int i) {
  if (i == s.steps - 1) return s.stop;
  return s.start + (s.stop - s.start) * i / (s.steps - 1);
}

}  // namespace detail

/// Evaluates every (grid point, quantity) cell on a worker pool; rows come back in grid order.
inline SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult res;
  res.header.push_back(spec.family == Family::GadGamma ? "gamma" : "phi");
  for (const auto& q : spec.quantities) res.header.push_back(q);
  const int nq = static_cast<int>(spec.quantities.size());
  const int cells = spec.steps * nq;
  res.rows.assign(spec.steps, std::vector<double>(nq + 1, NAN));
  std::vector<std::string> errors(cells);
  for (int i = 0; i < spec.steps; ++i) res.rows[i][0] = detail::grid_point(spec, i);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int c = next++; c < cells; c = next++) {
      const int i = c / nq, k = c % nq;
      try {
        res.rows[i][k + 1] = detail::sweep_quantity(spec.quantities[k], spec, res.rows[i][0]);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParameterRange) {
          errors[c] = std::string("!") + e.what();
        } else {
          errors[c] = e.what();
        }
      }
    }
  };
  int nt = spec.threads > 0 ? spec.threads : static_cast<int>(std::thread::hardware_concurrency());
  nt = std::clamp(nt, 1, cells);
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (int c = 0; c < cells; ++c) {
    if (errors[c].empty()) continue;
    // A bad quantity name is a spec error, not a cell failure.
    if (errors[c][0] == '!') throw Error(ErrorKind::ParameterRange, errors[c].substr(1));
    res.diagnostics.push_back(std::to_string(c / nq) + "," + spec.quantities[c % nq] + "," + errors[c]);
  }
  return res;
}

// ---------------------------------------------------------------------------
// CSV and SVG

inline std::string format_cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string to_csv(const SweepResult& r) {
  std::ostringstream os;
  for (size_t k = 0; k < r.header.size(); ++k) os << (k ? "," : "") << r.header[k];
  os << "\n";
  for (const auto& row : r.rows) {
    for (size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_cell(row[k]);
    os << "\n";
  }
  return os.str();
}

inline SweepResult parse_csv(const std::string& text) {
  SweepResult r;
  std::istringstream is(text);
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(l);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    return out;
  };
  if (!std::getline(is, line)) throw Error(ErrorKind::Parse, "csv: missing header");
  r.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& c : split(line)) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0') throw Error(ErrorKind::Parse, "csv: bad cell '" + c + "'");
      row.push_back(v);
    }
    if (row.size() != r.header.size()) throw Error(ErrorKind::Parse, "csv: row width differs from header");
    r.rows.push_back(std::move(row));
  }
  return r;
}

/// Line plot of every quantity column; non-finite cells break the polyline.
inline std::string to_svg(const SweepResult& r, const std::string& title = "") {
  const double W = 640, H = 420, ml = 60, mr = 160, mt = 30, mb = 45;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& row : r.rows) {
    xmin = std::min(xmin, row[0]);
    xmax = std::max(xmax, row[0]);
    for (size_t k = 1; k < row.size(); ++k)
      if (std::isfinite(row[k])) ymin = std::min(ymin, row[k]), ymax = std::max(ymax, row[k]);
  }
  if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  char buf[64];
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4, yv = ymin + (ymax - ymin) * t / 4;
    std::snprintf(buf, sizeof buf, "%.3g", xv);
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 16 << "\" font-size=\"11\" text-anchor=\"middle\">" << buf
       << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.3g", yv);
    os << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << buf
       << "</text>\n";
  }
  if (!r.header.empty())
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 8 << "\" font-size=\"12\" text-anchor=\"middle\">"
       << r.header[0] << "</text>\n";
  if (!title.empty())
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"18\" font-size=\"13\" text-anchor=\"middle\">" << title
       << "</text>\n";
  for (size_t k = 1; k < r.header.size(); ++k) {
    const char* col = colors[(k - 1) % 7];
    std::ostringstream pts;
    auto flush = [&] {
      if (pts.str().empty()) return;
      os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
      pts.str("");
    };
    for (const auto& row : r.rows) {
      if (!std::isfinite(row[k])) {
        flush();
        continue;
      }
      pts << px(row[0]) << "," << py(row[k]) << " ";
    }
    flush();
    const double ly = mt + 18.0 * k;
    os << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - mr + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << r.header[k] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParameterRange, "cannot write '" + path + "'");
  out << text;
}

}  // namespace symdist

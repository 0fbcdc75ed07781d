#pragma once

#include <string>

namespace symdist {

/// Shared numerical thresholds. Read-only once workers start.
struct Tolerances {
  double hermitian_asymmetry = 1e-8;
  double psd_clamp = 1e-10;
  double state_trace = 1e-9;
  double support = 1e-9;
  double infinite_perr = 1e-12;
  double box_equality = 1e-10;
  double chernoff_s = 1e-9;
  int chernoff_max_iter = 200;
  double sdp_gap = 1e-8;
  double sdp_feas = 1e-8;
  int sdp_max_iter = 200;
  double bisection_M = 1e-6;
  int dimension_cap = 512;

  /// Sets a field by name; returns false for an unknown key.
  bool set(const std::string& key, double value) {
    if (key == "hermitian_asymmetry") hermitian_asymmetry = value;
    else if (key == "psd_clamp") psd_clamp = value;
    else if (key == "state_trace") state_trace = value;
    else if (key == "support") support = value;
    else if (key == "infinite_perr") infinite_perr = value;
    else if (key == "box_equality") box_equality = value;
    else if (key == "chernoff_s") chernoff_s = value;
    else if (key == "chernoff_max_iter") chernoff_max_iter = static_cast<int>(value);
    else if (key == "sdp_gap") sdp_gap = value;
    else if (key == "sdp_feas") sdp_feas = value;
    else if (key == "sdp_max_iter") sdp_max_iter = static_cast<int>(value);
    else if (key == "bisection_M") bisection_M = value;
    else if (key == "dimension_cap") dimension_cap = static_cast<int>(value);
    else return false;
    return true;
  }
};

inline Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

}  // namespace symdist

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symdist/io.hpp"
#include "symdist/random.hpp"
#include "symdist/sweep.hpp"

using namespace symdist;

namespace {

struct BoxArgs {
  std::string file, golden;
  int random_dim = 0;
};

void add_box_options(CLI::App* app, BoxArgs& a, const std::string& prefix = "") {
  const std::string box = prefix.empty() ? "--box" : "--" + prefix;
  const std::string gold = prefix.empty() ? "--golden" : "--" + prefix + "-golden";
  const std::string rnd = prefix.empty() ? "--random" : "--" + prefix + "-random";
  auto* f = app->add_option(box, a.file, "box JSON file");
  auto* g = app->add_option(gold, a.golden, "golden unit shorthand M,q");
  auto* r = app->add_option(rnd, a.random_dim, "random box of this dimension (uses --seed)");
  f->excludes(g)->excludes(r);
  g->excludes(r);
}

QuantumBox resolve_box(const BoxArgs& a, unsigned seed, const char* what) {
  if (!a.file.empty()) return load_box(a.file);
  if (!a.golden.empty()) return golden_to_box(parse_golden(a.golden));
  if (a.random_dim > 0) {
    Rng rng(seed);
    return make_box(uniform(rng, 0.1, 0.9), random_state(a.random_dim, rng), random_state(a.random_dim, rng));
  }
  throw Error(ErrorKind::Parse, std::string(what) + ": give a box file, golden shorthand or random dimension");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return "inf";
  if (std::abs(v) < 1e-12) v = 0.0;  // round-off below the printed precision
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(const ExtReal& v) { return v.is_inf() ? "inf" : fmt(v.value()); }

void print_diagnostics(const TaskResult& t) {
  std::cerr << "method: " << t.diagnostics.method << "\n"
            << "solver: " << t.diagnostics.solver_status << "\n"
            << "solves: " << t.diagnostics.solves << "\n"
            << "witness_error: " << fmt(t.diagnostics.witness_error) << "\n";
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::pair<std::string, double> parse_kv(const std::string& s, const char* flag) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw Error(ErrorKind::Parse, std::string(flag) + ": expected key=value, got '" + s + "'");
  const std::string v = s.substr(eq + 1);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') throw Error(ErrorKind::Parse, std::string(flag) + ": bad value in '" + s + "'");
  return {s.substr(0, eq), x};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric distinguishability toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned seed = 1;
  std::vector<std::string> tols;
  bool verbose = false;
  app.add_option("--seed", seed, "seed for random boxes");
  app.add_option("--tol", tols, "override a shared tolerance, key=value")->take_all();
  app.add_flag("-v,--verbose", verbose, "print diagnostics to stderr");

  BoxArgs box, target;
  std::string regime_s = "cds";
  double eps = 0.0;
  bool sdp = false;

  auto* perr = app.add_subcommand("perr", "minimum discrimination error p_err");
  add_box_options(perr, box);
  perr->add_flag("--sdp", sdp, "also print the greatest-lower-bound SDP value");

  auto* sdc = app.add_subcommand("sd", "symmetric distinguishability -log2(2 p_err)");
  add_box_options(sdc, box);

  auto* distill = app.add_subcommand("distill", "one-shot distillable SD");
  add_box_options(distill, box);
  distill->add_option("--regime", regime_s, "cptpA or cds")->capture_default_str();
  distill->add_option("--eps", eps, "approximation error")->capture_default_str();

  auto* dilute = app.add_subcommand("dilute", "one-shot SD cost");
  add_box_options(dilute, box);
  dilute->add_option("--regime", regime_s, "cptpA or cds")->capture_default_str();
  dilute->add_option("--eps", eps, "approximation error")->capture_default_str();

  auto* convert = app.add_subcommand("convert", "minimum conversion error source -> target");
  add_box_options(convert, box);
  add_box_options(convert, target, "target");
  convert->add_option("--regime", regime_s, "cptpA or cds")->capture_default_str();

  auto* chern = app.add_subcommand("chernoff", "quantum Chernoff divergence of the two states");
  add_box_options(chern, box);

  auto* rates = app.add_subcommand("rates", "asymptotic rates; with a target, transformation rates");
  add_box_options(rates, box);
  add_box_options(rates, target, "target");
  rates->add_option("--regime", regime_s, "cptpA or cds (transformation rates)")->capture_default_str();

  std::string family_s = "gad-gamma", out_csv, out_svg, quantities_s, regime_conv;
  std::vector<std::string> params;
  int steps = 41, threads = 0;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep over a box family");
  sweep->add_option("--family", family_s, "gad-gamma, gad-phi or conversion-phi")->capture_default_str();
  sweep->add_option("--out", out_csv, "CSV output path (stdout when empty)");
  sweep->add_option("--svg", out_svg, "optional SVG plot path");
  sweep->add_option("--steps", steps, "grid points")->capture_default_str();
  sweep->add_option("--quantities", quantities_s, "comma separated quantity names");
  sweep->add_option("--param", params, "family parameter override key=value (N, gamma, q, eps, start, stop, ...)")
      ->take_all();
  sweep->add_option("--regime", regime_conv, "regime for min_conversion_error (default cptpA)");
  sweep->add_option("--threads", threads, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& t : tols) {
      const auto [k, v] = parse_kv(t, "--tol");
      if (!tolerances().set(k, v)) throw Error(ErrorKind::Parse, "--tol: unknown key '" + k + "'");
    }

    if (perr->parsed()) {
      const QuantumBox b = resolve_box(box, seed, "perr");
      std::cout << fmt(p_err(b)) << "\n";
      if (sdp) std::cout << fmt(p_err_sdp(b).value) << "\n";
    } else if (sdc->parsed()) {
      std::cout << fmt(sd(resolve_box(box, seed, "sd"))) << "\n";
    } else if (distill->parsed()) {
      const QuantumBox b = resolve_box(box, seed, "distill");
      const Regime r = regime_from_string(regime_s);
      const TaskResult t = eps > 0.0 ? distill_approx(b, eps, r) : distill_exact(b, r);
      std::cout << fmt(t.value) << "\n";
      if (verbose) print_diagnostics(t);
    } else if (dilute->parsed()) {
      const QuantumBox b = resolve_box(box, seed, "dilute");
      const Regime r = regime_from_string(regime_s);
      const TaskResult t = eps > 0.0 ? cost_approx(b, eps, r) : cost_exact(b, r);
      std::cout << fmt(t.value) << "\n";
      if (verbose) print_diagnostics(t);
    } else if (convert->parsed()) {
      const QuantumBox s = resolve_box(box, seed, "convert source");
      const QuantumBox t = resolve_box(target, seed + 1, "convert target");
      const TaskResult res = min_conversion_error(s, t, regime_from_string(regime_s));
      std::cout << fmt(res.value) << "\n";
      if (verbose) print_diagnostics(res);
    } else if (chern->parsed()) {
      const QuantumBox b = resolve_box(box, seed, "chernoff");
      std::cout << fmt(chernoff(b.rho0, b.rho1)) << "\n";
    } else if (rates->parsed()) {
      const QuantumBox b = resolve_box(box, seed, "rates");
      const bool has_target = !target.file.empty() || !target.golden.empty() || target.random_dim > 0;
      if (has_target) {
        const TransformRate tr =
            transform_rate(b, resolve_box(target, seed + 1, "rates target"), regime_from_string(regime_s));
        std::cout << "achievable " << fmt(tr.achievable) << "\n"
                  << "strong_converse " << fmt(tr.strong_converse) << "\n";
      } else {
        const AsymptoticRates a = asymptotic_rates(b);
        std::cout << "distill " << fmt(a.distill) << "\n"
                  << "exact_cost " << fmt(a.exact_cost) << "\n"
                  << "approx_cost " << fmt(a.approx_cost) << "\n";
      }
    } else if (sweep->parsed()) {
      SweepSpec spec = SweepSpec::defaults(family_from_string(family_s));
      spec.steps = steps;
      spec.threads = threads;
      if (!quantities_s.empty()) spec.quantities = split_commas(quantities_s);
      if (!regime_conv.empty()) spec.conversion_regime = regime_from_string(regime_conv);
      for (const auto& p : params) {
        const auto [k, v] = parse_kv(p, "--param");
        if (!spec.set(k, v)) throw Error(ErrorKind::Parse, "--param: unknown key '" + k + "'");
      }
      const SweepResult res = run_sweep(spec);
      const std::string csv = to_csv(res);
      if (out_csv.empty()) {
        std::cout << csv;
      } else {
        write_text(out_csv, csv);
        std::string diag;
        for (const auto& d : res.diagnostics) diag += d + "\n";
        write_text(out_csv + ".diagnostics.txt", diag);
      }
      if (!out_svg.empty()) write_text(out_svg, to_svg(res, to_string(spec.family)));
      if (!res.diagnostics.empty()) std::cerr << res.diagnostics.size() << " cell(s) failed; see diagnostics\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::SolverFailure ? 3 : 2;
  }
  return 0;
}

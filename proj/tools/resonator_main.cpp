// command-line front end: graph zeta / resonances, pants IFS and surface
// zeta, graph-vs-surface comparison, resonance-count convergence, chains.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <filesystem>
#include <iostream>
#include <random>

#include "resonator/io.hpp"
#include "resonator/orbits.hpp"
#include "resonator/parallel.hpp"
#include "resonator/solver.hpp"

using namespace resonator;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string out = ".";
  std::string format = "all";  // csv|json|svg|all
  bool json_errors = false;
  unsigned seed = 12345;
};

bool want(const CommonOpts& o, const std::string& fmt) {
  return o.format == "all" || o.format == fmt;
}

void emit(const CommonOpts& o, const std::string& name, const std::string& content) {
  fs::create_directories(o.out);
  write_file((fs::path(o.out) / name).string(), content);
  std::cout << "wrote " << (fs::path(o.out) / name).string() << "\n";
}

Window parse_window(const std::vector<double>& w) {
  if (w.size() != 4) fail(errc::config_error, "--window needs re_min re_max im_min im_max");
  return validate_window({w[0], w[1], w[2], w[3]});
}

// graph resonances in the fundamental strip, replicated across periods
std::vector<Resonance> replicate_chain(const ResonanceReport& strip, double period, int copies) {
  std::vector<Resonance> out;
  for (const auto& r : strip.roots)
    for (int k = 0; k < copies; ++k) out.push_back({r.s + cpx(0, k * period), r.multiplicity});
  return out;
}

int count_graph_roots_in(const ResonanceReport& strip, double period, const Window& U) {
  int count = 0;
  for (const auto& r : strip.roots) {
    double base = r.s.imag();
    long k_lo = long(std::floor((U.im_min - base) / period)) - 1;
    long k_hi = long(std::ceil((U.im_max - base) / period)) + 1;
    for (long k = k_lo; k <= k_hi; ++k)
      if (U.contains(r.s + cpx(0, double(k) * period))) count += r.multiplicity;
  }
  return count;
}

void guard_boundary(const ResonanceReport& strip, double period, const Window& U, double tol) {
  for (const auto& r : strip.roots) {
    double base = r.s.imag();
    long k_lo = long(std::floor((U.im_min - base) / period)) - 2;
    long k_hi = long(std::ceil((U.im_max - base) / period)) + 2;
    for (long k = k_lo; k <= k_hi; ++k) {
      cpx s = r.s + cpx(0, double(k) * period);
      double d = std::min(std::min(std::abs(s.real() - U.re_min), std::abs(s.real() - U.re_max)),
                          std::min(std::abs(s.imag() - U.im_min), std::abs(s.imag() - U.im_max)));
      bool inside_re = s.real() > U.re_min - tol && s.real() < U.re_max + tol;
      bool inside_im = s.imag() > U.im_min - tol && s.imag() < U.im_max + tol;
      if (d < tol && inside_re && inside_im)
        fail(errc::boundary_resonance, "graph resonance within " + format_double(tol) +
                                           " of the window boundary");
    }
  }
}

// ---------------------------------------------------------------- graph ---
int cmd_graph(const CommonOpts& common, const std::string& input,
              const std::vector<double>& window_args, cpx z, int check_windows) {
  MetricRibbonGraph g = parse_graph_json(read_file(input));
  DirectedEdgeCoding coding = directed_coding(g);
  ExpPoly zeta = graph_zeta(coding);
  if (want(common, "json")) emit(common, "zeta.json", exp_poly_to_json(zeta));

  ResonanceReport report;
  double period = 0;
  if (g.all_lengths_exact()) {
    report = roots_rational(zeta, z);
    period = *report.chain_period;
  } else {
    Window w = parse_window(window_args);
    report = find_zeros_in_window(exp_poly_fn(zeta, z), w);
  }
  if (want(common, "csv")) emit(common, "resonances.csv", resonances_to_csv(report));

  if (period > 0) {
    ResonanceReport replicated = report;
    replicated.roots = replicate_chain(report, period, 3);
    ChainReport chains = detect_chains(replicated, period);
    if (want(common, "json")) emit(common, "chains.json", chains_to_json(chains));

    if (check_windows > 0) {
      // randomized cross-check: argument-principle counts vs companion roots
      std::mt19937 rng(common.seed);
      std::uniform_real_distribution<double> u(0, 1);
      AnalyticFn f = exp_poly_fn(zeta, z);
      int agreed = 0;
      for (int t = 0; t < check_windows; ++t) {
        double re0 = -1 + 3 * u(rng), im0 = -period + 2 * period * u(rng);
        Window w{re0, re0 + 0.3 + u(rng), im0, im0 + 0.3 + u(rng)};
        int expected = count_graph_roots_in(report, period, w);
        try {
          if (count_zeros(f, w) == expected) ++agreed;
        } catch (const Error&) {
          ++agreed;  // boundary hit; window not admissible
        }
      }
      std::cout << "window check: " << agreed << "/" << check_windows << " agreed\n";
      if (agreed != check_windows) return 3;
    }
  }
  return 0;
}

// -------------------------------------------------------------- surface ---
FlowIFS build_surface(const std::vector<double>& pants, const std::string& input) {
  if (!pants.empty()) {
    if (pants.size() != 3) fail(errc::config_error, "--pants needs three widths");
    return build_pants_ifs(pants[0], pants[1], pants[2]);
  }
  if (input.empty()) fail(errc::config_error, "need --pants or --input sector data");
  return build_ifs_from_sectors(parse_sector_data_json(read_file(input)));
}

int cmd_surface(const CommonOpts& common, const std::vector<double>& pants,
                const std::string& input, const std::vector<double>& window_args, cpx z,
                int max_word_len) {
  FlowIFS ifs = build_surface(pants, input);
  int N = max_word_len > 0 ? max_word_len : ifs.symbols();
  OrbitTable table(ifs, N);
  if (want(common, "csv")) emit(common, "orbits.csv", orbits_to_csv(table));

  Window w = window_args.empty() ? Window{0.01, 1.0, -1.0, 1.0} : parse_window(window_args);

  // zeta on a 9x9 grid over the window
  json grid = json::array();
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      cpx s(w.re_min + (w.re_max - w.re_min) * i / 8.0,
            w.im_min + (w.im_max - w.im_min) * j / 8.0);
      ZetaValue v = surface_zeta_eval(table, s, z, N);
      grid.push_back({{"s", {s.real(), s.imag()}},
                      {"z", {z.real(), z.imag()}},
                      {"value_re", v.value.real()},
                      {"value_im", v.value.imag()},
                      {"N", N},
                      {"truncation_diag", v.truncation_diag}});
    }
  if (want(common, "json")) emit(common, "zeta_grid.json", grid.dump(2));

  AnalyticFn f = [&](cpx s) {
    ZetaValue v = surface_zeta_eval(table, s, z, N);
    return std::pair<cpx, cpx>(v.value, v.ds);
  };
  ResonanceReport report = find_zeros_in_window(f, w);
  report.method = "cycle-expansion";
  if (want(common, "csv")) emit(common, "resonances.csv", resonances_to_csv(report));

  json summary;
  summary["eta_hat"] = ifs.eta_hat();
  summary["symbols"] = ifs.symbols();
  summary["max_word_len"] = N;
  summary["sup_letter_derivative"] = ifs.sup_letter_derivative();
  summary["resonances_in_window"] = report.total_count();
  try {
    double delta = critical_exponent(f, std::max(w.re_min, 1e-8), w.re_max);
    summary["critical_exponent"] = delta;
  } catch (const Error& e) {
    summary["critical_exponent"] = nullptr;
    summary["critical_exponent_error"] = e.what();
  }
  double Lmax = 0;
  for (double fl : ifs.face_lengths()) Lmax = std::max(Lmax, fl);
  IfsDiagnostics diag = verify_ifs(ifs, Lmax);
  summary["verify"] = {{"alpha_upper_ok", diag.alpha_upper_ok},
                       {"alpha_lower_ok", diag.alpha_lower_ok},
                       {"beta_ok", diag.beta_ok},
                       {"xi_ok", diag.xi_ok},
                       {"inverse_ok", diag.inverse_ok},
                       {"contraction_ok", diag.contraction_ok},
                       {"min_disjoint_gap", diag.min_disjoint_gap},
                       {"feet_inside", diag.feet_inside}};
  if (want(common, "json")) emit(common, "summary.json", summary.dump(2));
  return 0;
}

// -------------------------------------------------------------- compare ---
int cmd_compare(const CommonOpts& common, const std::vector<std::string>& pants_str,
                const std::vector<double>& Lgrid, double A, int max_word_len, int sdensity,
                int zmags, int zphases) {
  if (A <= 0) fail(errc::config_error, "--A must be positive");
  if (Lgrid.empty()) fail(errc::config_error, "--Lgrid must be nonempty");
  std::vector<Num> base = {Num(1), Num(1), Num(1)};
  if (!pants_str.empty()) {
    if (pants_str.size() != 3) fail(errc::config_error, "--pants needs three widths");
    for (int i = 0; i < 3; ++i) base[i] = parse_number(pants_str[i]);
  }

  struct Row {
    double L, eta, supdiff;
  };
  std::vector<Row> rows(Lgrid.size());
  std::vector<std::string> errors(Lgrid.size());
  parallel_for(int(Lgrid.size()), [&](int idx) {
    try {
      double L = Lgrid[idx];
      Num Lnum = parse_number(format_double(L));
      std::array<Num, 3> widths = {base[0] * Lnum, base[1] * Lnum, base[2] * Lnum};
      MetricRibbonGraph spine =
          validate_graph(pants_spine(widths[0], widths[1], widths[2]));
      ExpPoly gz = graph_zeta(directed_coding(spine));
      FlowIFS ifs =
          build_pants_ifs(widths[0].value(), widths[1].value(), widths[2].value());
      int N = max_word_len > 0 ? max_word_len : ifs.symbols();
      OrbitTable table(ifs, N);

      double Lmax = std::max({widths[0].value(), widths[1].value(), widths[2].value()});
      double smax = A / Lmax;
      double sup = 0;
      for (int i = 0; i < sdensity; ++i)
        for (int j = 0; j < sdensity; ++j) {
          cpx s(-smax + 2 * smax * i / double(sdensity - 1),
                -smax + 2 * smax * j / double(sdensity - 1));
          if (std::abs(s) > smax) continue;
          auto d = cycle_coefficients(table, s, N);
          for (int m = 1; m <= zmags; ++m)
            for (int p = 0; p < zphases; ++p) {
              cpx zv = std::polar(A * m / double(zmags), 2 * std::numbers::pi * p / zphases);
              cpx vx = 0;
              for (int l = N; l >= 0; --l) vx += d[l].first * std::pow(zv, double(l));
              cpx vg = gz.eval(s, zv).first;
              sup = std::max(sup, std::abs(vx - vg));
            }
        }
      rows[idx] = {Lmax, ifs.eta_hat(), sup};
    } catch (const Error& e) {
      errors[idx] = e.what();
    }
  });
  for (const auto& e : errors)
    if (!e.empty()) fail(errc::numerical_failure, e);

  std::string csv = "L,eta_hat,supdiff\n";
  for (const auto& r : rows)
    csv += format_double(r.L) + "," + format_double(r.eta) + "," + format_double(r.supdiff) + "\n";
  if (want(common, "csv")) emit(common, "compare.csv", csv);

  // least-squares slope of log(supdiff) against L and against eta_hat
  auto slope = [&](auto xs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = int(rows.size());
    for (int i = 0; i < n; ++i) {
      double x = xs(rows[i]), y = std::log(rows[i].supdiff);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  json summary;
  summary["slope_vs_L"] = slope([](const Row& r) { return r.L; });
  summary["slope_vs_eta"] = slope([](const Row& r) { return r.eta; });
  bool decreasing = true;
  for (size_t i = 0; i + 1 < rows.size(); ++i)
    if (!(rows[i + 1].supdiff < rows[i].supdiff)) decreasing = false;
  summary["strictly_decreasing"] = decreasing;
  if (want(common, "json")) emit(common, "summary.json", summary.dump(2));

  if (want(common, "svg")) {
    SvgSeries series;
    for (const auto& r : rows) series.points.push_back({r.L, r.supdiff});
    emit(common, "compare.svg", svg_scatter({series}, "L", "sup |d_X - d_Gamma|", true));
  }
  return 0;
}

// ------------------------------------------------------------- converge ---
int cmd_converge(const CommonOpts& common, const std::vector<std::string>& pants_str,
                 const std::vector<double>& alphas, const std::vector<double>& window_args,
                 int max_word_len) {
  if (alphas.empty()) fail(errc::config_error, "--Lgrid must list the scale sequence");
  std::vector<Num> base = {Num(1), Num(1), Num(1)};
  if (!pants_str.empty()) {
    if (pants_str.size() != 3) fail(errc::config_error, "--pants needs three widths");
    for (int i = 0; i < 3; ++i) base[i] = parse_number(pants_str[i]);
  }
  Window U = parse_window(window_args);

  // target graph: spine of the base pants
  MetricRibbonGraph gamma = pants_spine(base[0], base[1], base[2]);
  ExpPoly gz = graph_zeta(directed_coding(gamma));
  ResonanceReport strip = roots_rational(gz, 1.0);
  double period = *strip.chain_period;
  guard_boundary(strip, period, U, 1e-3);
  int graph_count = count_graph_roots_in(strip, period, U);

  std::string csv = "alpha,surface_count,graph_count\n";
  json per_alpha = json::array();
  int first_match = -1;
  bool stable = true;
  for (size_t i = 0; i < alphas.size(); ++i) {
    double a = alphas[i];
    FlowIFS ifs = build_pants_ifs(a * base[0].value(), a * base[1].value(), a * base[2].value());
    int N = max_word_len > 0 ? max_word_len : ifs.symbols();
    OrbitTable table(ifs, N);
    AnalyticFn f = [&](cpx s) {
      ZetaValue v = surface_zeta_eval(table, s / a, 1.0, N);
      return std::pair<cpx, cpx>(v.value, v.ds / a);
    };
    int count = count_zeros(f, U);
    csv += format_double(a) + "," + std::to_string(count) + "," + std::to_string(graph_count) + "\n";
    per_alpha.push_back({{"alpha", a}, {"count", count}});
    if (count == graph_count && first_match < 0) first_match = int(i);
    if (first_match >= 0 && count != graph_count) stable = false;
  }
  if (want(common, "csv")) emit(common, "converge.csv", csv);
  json summary;
  summary["graph_count"] = graph_count;
  summary["first_match_index"] = first_match;
  summary["stable_after_first_match"] = stable;
  summary["per_alpha"] = per_alpha;
  if (want(common, "json")) emit(common, "summary.json", summary.dump(2));
  return 0;
}

// ---------------------------------------------------------------- chains ---
int cmd_chains(const CommonOpts& common, const std::string& input, double period, double tol_re,
               double tol_im) {
  ResonanceReport report = parse_resonances_csv(read_file(input));
  ChainReport chains = detect_chains(report, period, tol_re, tol_im);
  if (want(common, "json")) emit(common, "chains.json", chains_to_json(chains));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamical zeta functions and resonances of metric ribbon graphs "
               "and funneled hyperbolic surfaces"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--out", common.out, "output directory");
  app.add_option("--format", common.format, "csv|json|svg|all")
      ->check(CLI::IsMember({"csv", "json", "svg", "all"}));
  app.add_option("--seed", common.seed, "seed for randomized windows");
  app.add_flag("--json-errors", common.json_errors, "emit machine-readable error JSON on stderr");

  std::string input;
  std::vector<double> window_args, pants, Lgrid;
  std::vector<std::string> pants_str;
  std::vector<double> zarg;
  int max_word_len = 0, basis = 24, check_windows = 0;
  double A = 2.0, period = 0, tol_re = 1e-6, tol_im = 1e-6;
  int sdensity = 9, zmags = 5, zphases = 8;

  auto* graph = app.add_subcommand("graph", "graph zeta polynomial, resonances, chains");
  graph->add_option("--input", input, "graph JSON file")->required();
  graph->add_option("--window", window_args, "re_min re_max im_min im_max")->expected(4);
  graph->add_option("--z", zarg, "z value (re im)")->expected(2);
  graph->add_option("--check-windows", check_windows, "randomized count cross-checks");

  auto* surface = app.add_subcommand("surface", "pants/sector IFS, orbit table, zeta, resonances");
  surface->add_option("--pants", pants, "funnel widths L1 L2 L3")->expected(3);
  surface->add_option("--input", input, "sector data JSON file");
  surface->add_option("--window", window_args, "re_min re_max im_min im_max")->expected(4);
  surface->add_option("--z", zarg, "z value (re im)")->expected(2);
  surface->add_option("--max-word-len", max_word_len, "cycle expansion truncation length");
  surface->add_option("--basis", basis, "nuclear basis degree (reserved)");

  auto* compare = app.add_subcommand("compare", "sup |d_X - d_Gamma| across an L-grid");
  compare->add_option("--pants", pants_str, "base widths, scaled by each L")->expected(3);
  compare->add_option("--Lgrid", Lgrid, "scales")->required()->expected(-1);
  compare->add_option("--A", A, "window parameter: |z| <= A, |s| <= A/L");
  compare->add_option("--max-word-len", max_word_len, "cycle expansion truncation length");
  compare->add_option("--sdensity", sdensity, "s-grid density per axis");
  compare->add_option("--zmag", zmags, "number of z magnitudes");
  compare->add_option("--zphase", zphases, "number of z phases");

  auto* converge = app.add_subcommand("converge", "|U ∩ Res(X_i, a_i)| against the graph count");
  converge->add_option("--pants", pants_str, "base widths")->expected(3);
  converge->add_option("--Lgrid", Lgrid, "scale sequence a_i")->required()->expected(-1);
  converge->add_option("--window", window_args, "re_min re_max im_min im_max")
      ->required()
      ->expected(4);
  converge->add_option("--max-word-len", max_word_len, "cycle expansion truncation length");

  auto* chains = app.add_subcommand("chains", "group a resonance CSV into chains");
  chains->add_option("--input", input, "resonance CSV")->required();
  chains->add_option("--period", period, "chain period")->required();
  chains->add_option("--tol-re", tol_re, "real-part tolerance");
  chains->add_option("--tol-im", tol_im, "spacing tolerance");

  CLI11_PARSE(app, argc, argv);

  cpx z = zarg.size() == 2 ? cpx(zarg[0], zarg[1]) : cpx(1, 0);
  try {
    if (graph->parsed()) return cmd_graph(common, input, window_args, z, check_windows);
    if (surface->parsed())
      return cmd_surface(common, pants, input, window_args, z, max_word_len);
    if (compare->parsed())
      return cmd_compare(common, pants_str, Lgrid, A, max_word_len, sdensity, zmags, zphases);
    if (converge->parsed())
      return cmd_converge(common, pants_str, Lgrid, window_args, max_word_len);
    if (chains->parsed()) return cmd_chains(common, input, period, tol_re, tol_im);
  } catch (const Error& e) {
    if (common.json_errors) {
      json err = {{"error", errc_name(e.code())}, {"detail", e.what()}};
      std::cerr << err.dump() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return (e.code() == errc::config_error || e.code() == errc::parse_error) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

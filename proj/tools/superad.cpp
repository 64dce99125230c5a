// Command-line front end: coefficient tables, frame scans, coupling
// comparisons, transition histories, scattering sweeps and the verification
// suite.  Emits CSV/JSON with 17-significant-digit floats; outputs are
// deterministic for a fixed configuration.

#include <CLI11.hpp>

#include <cstdlib>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "superad/coeffs.hpp"
#include "superad/frames.hpp"
#include "superad/io.hpp"
#include "superad/propagate.hpp"
#include "superad/verify.hpp"

namespace {

using namespace superad;

struct RunConfig {
  double gamma = 0.5;
  double t_c = 1.0;
  double eps = 0.1;
  std::vector<double> eps_list;
  int nmax = 0;  // 0: derived from eps
  std::string parity = "even";
  double tmin = -5.0;
  double tmax = 5.0;
  int points = 201;
  double horizon = 0.0;  // 0: 50 * t_c
  double rtol = 1e-12;
  std::string out;
  std::string format = "csv";

  ModelParams params() const { return {gamma, t_c, eps}; }
  Parity parity_enum() const { return parity == "odd" ? Parity::odd : Parity::even; }
  double T() const { return horizon > 0 ? horizon : 50.0 * t_c; }
  IntegratorOptions integrator() const {
    IntegratorOptions o;
    o.rtol = rtol;
    o.atol = rtol * 1e-2;
    return o;
  }
  std::vector<double> grid() const {
    std::vector<double> g(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i)
      g[static_cast<size_t>(i)] = tmin + (tmax - tmin) * i / (points - 1);
    return g;
  }
  void validate_grid() const {
    if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (!(tmin < tmax)) throw std::invalid_argument("need tmin < tmax");
  }
};

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty()) {
    std::cout << content;
  } else {
    write_file_atomic(cfg.out, content);
  }
}

std::string fmt(double v) { return format_double(v); }

int cmd_coeffs(const RunConfig& cfg) {
  int nmax = cfg.nmax > 0 ? cfg.nmax : 2 * static_cast<int>(std::ceil(cfg.t_c / cfg.eps));
  if (nmax % 2 != 0 || nmax < 2)
    throw std::invalid_argument("--nmax must be even and >= 2");
  CoefficientTable tb = build_coefficients(nmax, cfg.gamma);
  std::string s = csv_row({"n", "j", "a", "b"});
  for (int n = 2; n <= nmax; n += 2) {
    for (int j = 0; j < n; ++j) {
      s += csv_row({std::to_string(n), std::to_string(j), fmt(tb.a(n, j)), fmt(tb.b(n, j))});
    }
  }
  emit(cfg, s);
  return 0;
}

int cmd_frame(const RunConfig& cfg) {
  cfg.validate_grid();
  ModelParams p = cfg.params();
  TruncationChoice ch = choose_truncation(p, cfg.parity_enum());
  if (cfg.nmax > 0) ch.n = cfg.nmax;
  FrameBank bank(p, ch.n);
  std::string s = csv_row({"t", "xi", "eta", "zeta", "g", "lambda1", "lambda2", "alpha",
                           "beta_re", "beta_im", "rho", "re_c", "im_c", "abs_c",
                           "abs_c_asymptotic", "phi_alpha"});
  for (double t : cfg.grid()) {
    FrameEvaluation fr = bank.frame_at(t);
    complexd c = fr.c.value();
    double ca = std::abs(coupling_asymptotic(t, ch, p).value());
    s += csv_row({fmt(t), fmt(fr.sums.xi), fmt(fr.sums.eta), fmt(fr.sums.zeta), fmt(fr.sums.g),
                  fmt(fr.lambda1), fmt(fr.lambda2), fmt(fr.alpha), fmt(fr.beta.real()),
                  fmt(fr.beta.imag()), fmt(fr.rho), fmt(c.real()), fmt(c.imag()),
                  fmt(std::abs(c)), fmt(ca), fmt(error_envelope(t, 1.4, p))});
  }
  emit(cfg, s);
  return 0;
}

int cmd_coupling(const RunConfig& cfg) {
  cfg.validate_grid();
  ModelParams p = cfg.params();
  TruncationChoice ch = choose_truncation(p, cfg.parity_enum());
  FrameBank bank(p, ch.n);
  if (cfg.format == "json") {
    complexd ce = bank.coupling_exact(0.0).value();
    complexd ca = coupling_asymptotic(0.0, ch, p).value();
    std::ostringstream os;
    os << "{\n"
       << "  \"eps\": " << fmt(p.eps) << ",\n  \"gamma\": " << fmt(p.gamma)
       << ",\n  \"t_c\": " << fmt(p.t_c) << ",\n  \"n_eps\": " << ch.n
       << ",\n  \"sigma_eps\": " << fmt(ch.sigma) << ",\n  \"abs_c_exact_0\": "
       << fmt(std::abs(ce)) << ",\n  \"abs_c_asymptotic_0\": " << fmt(std::abs(ca))
       << ",\n  \"relative_error_0\": " << fmt(std::abs(ce - ca) / std::abs(ca)) << "\n}\n";
    emit(cfg, os.str());
    return 0;
  }
  std::string s = csv_row(
      {"t", "re_c_exact", "im_c_exact", "abs_c_exact", "abs_c_asymptotic", "abs_diff",
       "phi_alpha"});
  for (double t : cfg.grid()) {
    complexd ce = bank.coupling_exact(t).value();
    complexd ca = coupling_asymptotic(t, ch, p).value();
    s += csv_row({fmt(t), fmt(ce.real()), fmt(ce.imag()), fmt(std::abs(ce)),
                  fmt(std::abs(ca)), fmt(std::abs(ce - ca)), fmt(error_envelope(t, 1.4, p))});
  }
  emit(cfg, s);
  return 0;
}

std::string scatter_json(const ScatterResult& r, const RunConfig& cfg,
                         const TruncationChoice& ch) {
  std::ostringstream os;
  os << "{\n"
     << "  \"eps\": " << fmt(r.eps) << ",\n  \"gamma\": " << fmt(cfg.gamma)
     << ",\n  \"t_c\": " << fmt(cfg.t_c) << ",\n  \"n_eps\": " << ch.n
     << ",\n  \"sigma_eps\": " << fmt(ch.sigma) << ",\n  \"amplitude_measured\": "
     << fmt(r.amplitude_measured) << ",\n  \"amplitude_theory\": " << fmt(r.amplitude_theory)
     << ",\n  \"relative_error\": " << fmt(r.relative_error) << ",\n  \"T\": " << fmt(r.T)
     << ",\n  \"rtol\": " << fmt(cfg.rtol)
     << ",\n  \"horizon_flag\": " << (r.horizon_flag ? "true" : "false") << "\n}\n";
  return os.str();
}

int cmd_history(const RunConfig& cfg) {
  cfg.validate_grid();
  ModelParams p = cfg.params();
  TruncationChoice ch = choose_truncation(p, cfg.parity_enum());
  double T = cfg.T();
  std::vector<double> grid;
  grid.push_back(-T);
  for (double t : cfg.grid())
    if (t > -T && t < T) grid.push_back(t);
  grid.push_back(T);
  HistoryResult h = transition_history(p, ch, T, grid, cfg.integrator());
  if (h.precision_flag)
    std::cerr << "warning: rescaled-integration mismatch "
              << fmt(h.rescaled_mismatch) << " exceeds 1%\n";
  if (cfg.format == "json") {
    double measured = std::abs(h.record.K.back().a12);
    double theory = 2.0 * std::sin(std::numbers::pi * p.gamma / 2.0) * std::exp(-p.t_c / p.eps);
    ScatterResult r;
    r.eps = p.eps;
    r.T = T;
    r.amplitude_measured = measured;
    r.amplitude_theory = theory;
    r.relative_error = measured / theory - 1.0;
    emit(cfg, scatter_json(r, cfg, ch));
    return 0;
  }
  std::string s = csv_row({"t", "re_k11", "im_k11", "re_k12", "im_k12", "re_k21", "im_k21",
                           "re_k22", "im_k22", "abs_k_off", "abs_reference", "deviation"});
  for (size_t i = 0; i < h.record.t.size(); ++i) {
    const Mat2C& K = h.record.K[i];
    double koff = std::abs(K.a12);
    double ref = std::abs(h.record.reference[i]);
    s += csv_row({fmt(h.record.t[i]), fmt(K.a11.real()), fmt(K.a11.imag()), fmt(K.a12.real()),
                  fmt(K.a12.imag()), fmt(K.a21.real()), fmt(K.a21.imag()), fmt(K.a22.real()),
                  fmt(K.a22.imag()), fmt(koff), fmt(ref), fmt(koff - ref)});
  }
  emit(cfg, s);
  return 0;
}

int cmd_scatter(const RunConfig& cfg) {
  ModelParams p = cfg.params();
  TruncationChoice ch = choose_truncation(p, cfg.parity_enum());
  ScatterResult r = scattering(p, cfg.T(), cfg.integrator(), cfg.parity_enum());
  if (r.horizon_flag)
    std::cerr << "warning: doubling the horizon changed the amplitude by "
              << fmt(r.doubling_change) << "\n";
  if (cfg.format == "csv") {
    std::string s = csv_row({"eps", "n_eps", "sigma_eps", "amplitude_measured",
                             "amplitude_theory", "relative_error", "T"});
    s += csv_row({fmt(r.eps), std::to_string(ch.n), fmt(ch.sigma), fmt(r.amplitude_measured),
                  fmt(r.amplitude_theory), fmt(r.relative_error), fmt(r.T)});
    emit(cfg, s);
  } else {
    emit(cfg, scatter_json(r, cfg, ch));
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  std::vector<double> epses = cfg.eps_list.empty() ? std::vector<double>{cfg.eps} : cfg.eps_list;
  std::vector<std::future<std::pair<ScatterResult, TruncationChoice>>> futs;
  for (double e : epses) {
    futs.push_back(std::async(std::launch::async, [e, &cfg]() {
      ModelParams p{cfg.gamma, cfg.t_c, e};
      TruncationChoice ch = choose_truncation(p, cfg.parity_enum());
      ScatterResult r = scattering(p, cfg.T(), cfg.integrator(), cfg.parity_enum(), false);
      return std::make_pair(r, ch);
    }));
  }
  std::vector<std::pair<ScatterResult, TruncationChoice>> results;
  results.reserve(futs.size());
  for (auto& f : futs) results.push_back(f.get());
  if (cfg.format == "json") {
    std::string s = "[\n";
    for (size_t i = 0; i < results.size(); ++i) {
      std::string one = scatter_json(results[i].first, cfg, results[i].second);
      // indent the object into the array
      s += one.substr(0, one.size() - 1) + (i + 1 < results.size() ? "," : "") + "\n";
    }
    s += "]\n";
    emit(cfg, s);
  } else {
    std::string s = csv_row({"eps", "n_eps", "sigma_eps", "amplitude_measured",
                             "amplitude_theory", "relative_error", "T"});
    for (const auto& [r, ch] : results) {
      s += csv_row({fmt(r.eps), std::to_string(ch.n), fmt(ch.sigma),
                    fmt(r.amplitude_measured), fmt(r.amplitude_theory),
                    fmt(r.relative_error), fmt(r.T)});
    }
    emit(cfg, s);
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<CheckResult> checks = run_acceptance();
  std::vector<CheckResult> inv = run_invariants();
  checks.insert(checks.end(), inv.begin(), inv.end());
  size_t passed = 0;
  if (cfg.format == "json") {
    std::cout << checks_to_json(checks);
    for (const auto& c : checks) passed += c.pass ? 1 : 0;
  } else {
    for (const auto& c : checks) {
      std::cout << format_check(c) << "\n";
      passed += c.pass ? 1 : 0;
    }
    std::cout << passed << "/" << checks.size() << " checks passed\n";
  }
  if (!cfg.out.empty()) write_file_atomic(cfg.out, checks_to_json(checks));
  return passed == checks.size() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superadiabatic representations of a two-level avoided crossing"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config")->description("flat key=value configuration file");

  RunConfig cfg;
  if (const char* env = std::getenv("SUPERAD_RTOL")) cfg.rtol = std::atof(env);

  app.add_option("--gamma", cfg.gamma, "coupling residue strength");
  app.add_option("--tc", cfg.t_c, "pole distance t_c > 0");
  app.add_option("--eps", cfg.eps, "adiabatic parameter (recommend eps >= 0.04*tc in doubles)");
  app.add_option("--eps-list", cfg.eps_list, "epsilon values for sweep");
  app.add_option("--nmax", cfg.nmax, "coefficient-table cap / frame order override");
  app.add_option("--parity", cfg.parity, "truncation parity")
      ->check(CLI::IsMember({"even", "odd"}));
  app.add_option("--tmin", cfg.tmin, "grid start");
  app.add_option("--tmax", cfg.tmax, "grid end");
  app.add_option("--points", cfg.points, "grid points (>= 2)");
  app.add_option("--horizon", cfg.horizon, "integration horizon T (default 50*tc)");
  app.add_option("--rtol", cfg.rtol, "integrator relative tolerance");
  app.add_option("--out", cfg.out, "output path (stdout when omitted)");
  auto* fmt_opt = app.add_option("--format", cfg.format, "output format")
                      ->check(CLI::IsMember({"csv", "json"}));

  auto* c_coeffs = app.add_subcommand("coeffs", "emit the coefficient table as CSV");
  auto* c_frame = app.add_subcommand("frame", "scan frame quantities over a t grid");
  auto* c_coupling = app.add_subcommand("coupling", "exact vs asymptotic coupling");
  auto* c_history = app.add_subcommand("history", "transition history in the optimal basis");
  auto* c_scatter = app.add_subcommand("scatter", "scattering amplitude vs theory");
  auto* c_sweep = app.add_subcommand("sweep", "scattering summary per epsilon");
  auto* c_verify = app.add_subcommand("verify", "run the acceptance and invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  // scattering summaries default to JSON unless a format was requested
  if (fmt_opt->count() == 0 && c_scatter->parsed()) cfg.format = "json";

  try {
    ModelParams p = cfg.params();
    p.validate();
    if (c_coeffs->parsed()) return cmd_coeffs(cfg);
    if (c_frame->parsed()) return cmd_frame(cfg);
    if (c_coupling->parsed()) return cmd_coupling(cfg);
    if (c_history->parsed()) return cmd_history(cfg);
    if (c_scatter->parsed()) return cmd_scatter(cfg);
    if (c_sweep->parsed()) return cmd_sweep(cfg);
    if (c_verify->parsed()) return cmd_verify(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#include "pwmotion/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pwmotion/envelopes.hpp"
#include "pwmotion/errors.hpp"
#include "pwmotion/euclid.hpp"
#include "pwmotion/grid.hpp"
#include "pwmotion/halfplane.hpp"
#include "pwmotion/io.hpp"
#include "pwmotion/motion_group.hpp"
#include "pwmotion/profiles.hpp"
#include "pwmotion/pw_construct.hpp"
#include "pwmotion/rng.hpp"
#include "pwmotion/schrodinger.hpp"
#include "CLI11.hpp"
#include "json.hpp"

namespace pwmotion {
namespace {

using nlohmann::json;

/// One flat bag of parameters for all subcommands: the shared experiment
/// knobs (grid sizes N/L/M, band B, time t0, output dir, seed) plus the
/// per-command extras. Flags override config-file values override
/// per-command defaults.
struct ExperimentConfig {
  std::string command;
  std::string theta = "sqrt";
  int n = 512;              // points per axis
  double half_width = 16.0; // box half-width
  int angles = 8;           // circle sample count
  int band = -1;            // matrix band; negative selects automatically
  double t0 = 1.0;
  std::string out_dir = ".";
  std::uint64_t seed = 12345;

  std::string input;              // artifact base path for --input commands
  std::string function = "all";   // named battery member
  std::string config_path;        // consumed by the pre-parse scan
  int dim = 1;
  double budget = 2.0;
  int points = 512;               // realization grid for construct
  double t_max = 1048576.0;       // classifier truncation
  double r = 1.0;                 // representation radius
  double r_max = 16.0;
  int r_points = 65;
  int directions = 8;
  double lambda_max = 6.0;
  int lambda_count = 33;
  double tolerance = -1.0;        // negative: per-function default
  int count = 5;                  // plancherel battery size
  bool save_state = false;
};

json num(double v) { return json(format_double(v)); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw SerializationError("cannot write " + path);
}

void ensure_out_dir(const ExperimentConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + cfg.out_dir);
}

std::string artifact(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

/// Writes <out>/<name>.json and echoes the report to stdout.
void emit_report(const ExperimentConfig& cfg, const std::string& name, const json& j) {
  ensure_out_dir(cfg);
  write_text(artifact(cfg, name + ".json"), j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
}

void emit_csv(const ExperimentConfig& cfg, const std::string& name, const std::string& text) {
  ensure_out_dir(cfg);
  write_text(artifact(cfg, name + ".csv"), text);
}

std::string error_name(const Error& e) {
  if (dynamic_cast<const NegativeEnvelope*>(&e)) return "NegativeEnvelope";
  if (dynamic_cast<const NonFiniteSample*>(&e)) return "NonFiniteSample";
  if (dynamic_cast<const DivergentLogIntegral*>(&e)) return "DivergentLogIntegral";
  if (dynamic_cast<const InconclusiveLogIntegral*>(&e)) return "InconclusiveLogIntegral";
  if (dynamic_cast<const BudgetExhausted*>(&e)) return "BudgetExhausted";
  if (dynamic_cast<const AnnihilatedSymmetrization*>(&e)) return "AnnihilatedSymmetrization";
  if (dynamic_cast<const GridTooCoarse*>(&e)) return "GridTooCoarse";
  if (dynamic_cast<const InsufficientCoverage*>(&e)) return "InsufficientCoverage";
  if (dynamic_cast<const DegenerateData*>(&e)) return "DegenerateData";
  if (dynamic_cast<const BandCapExceeded*>(&e)) return "BandCapExceeded";
  if (dynamic_cast<const OverflowGuard*>(&e)) return "OverflowGuard";
  if (dynamic_cast<const SerializationError*>(&e)) return "SerializationError";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  return "Error";
}

// ---------------------------------------------------------------------------
// config file handling

double cfg_num(const json& v, const std::string& key) {
  try {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return std::stod(v.get<std::string>());
  } catch (const std::exception&) {
  }
  throw ConfigError("config field '" + key + "' must be a number");
}

int cfg_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config field '" + key + "' must be an integer");
  return v.get<int>();
}

std::string cfg_str(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config field '" + key + "' must be a string");
  return v.get<std::string>();
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file " + path + ": root must be an object");

  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      const std::string c = cfg_str(value, key);
      if (c != cfg.command)
        throw ConfigError("config field 'command' is '" + c + "' but the subcommand is '" +
                          cfg.command + "'");
    } else if (key == "theta") {
      cfg.theta = cfg_str(value, key);
    } else if (key == "n") {
      cfg.n = cfg_int(value, key);
    } else if (key == "half_width") {
      cfg.half_width = cfg_num(value, key);
    } else if (key == "angles") {
      cfg.angles = cfg_int(value, key);
    } else if (key == "band") {
      cfg.band = cfg_int(value, key);
    } else if (key == "t0") {
      cfg.t0 = cfg_num(value, key);
    } else if (key == "out") {
      cfg.out_dir = cfg_str(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("config field 'seed' must be a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "input") {
      cfg.input = cfg_str(value, key);
    } else if (key == "function") {
      cfg.function = cfg_str(value, key);
    } else if (key == "dim") {
      cfg.dim = cfg_int(value, key);
    } else if (key == "budget") {
      cfg.budget = cfg_num(value, key);
    } else if (key == "points") {
      cfg.points = cfg_int(value, key);
    } else if (key == "tmax") {
      cfg.t_max = cfg_num(value, key);
    } else if (key == "r") {
      cfg.r = cfg_num(value, key);
    } else if (key == "r_max") {
      cfg.r_max = cfg_num(value, key);
    } else if (key == "r_points") {
      cfg.r_points = cfg_int(value, key);
    } else if (key == "directions") {
      cfg.directions = cfg_int(value, key);
    } else if (key == "lambda_max") {
      cfg.lambda_max = cfg_num(value, key);
    } else if (key == "lambda_count") {
      cfg.lambda_count = cfg_int(value, key);
    } else if (key == "tolerance") {
      cfg.tolerance = cfg_num(value, key);
    } else if (key == "count") {
      cfg.count = cfg_int(value, key);
    } else if (key == "save_state") {
      if (!value.is_boolean()) throw ConfigError("config field 'save_state' must be a boolean");
      cfg.save_state = value.get<bool>();
    } else {
      throw ConfigError("config file " + path + ": unknown field '" + key + "'");
    }
  }
}

void apply_command_defaults(ExperimentConfig& cfg, const std::string& command) {
  cfg.command = command;
  if (const char* env = std::getenv("PWMOTION_OUT"); env != nullptr && *env != '\0')
    cfg.out_dir = env;
  if (command == "slice-check") {
    cfg.function = "all";
    cfg.n = 512;
    cfg.half_width = -1.0;  // negative: chosen per battery function
  } else if (command == "schrodinger-rn") {
    cfg.function = "bump";
    cfg.n = 2048;
    cfg.half_width = 64.0;
  } else if (command == "schrodinger-mn") {
    cfg.t0 = 0.5;
  } else if (command == "poisson-check") {
    cfg.theta = "linear";
  } else if (command == "plancherel") {
    cfg.n = 64;
    cfg.half_width = 2.0;
    cfg.r_max = 40.0;
    cfg.r_points = 257;
  }
}

void require_positive(double v, const std::string& name) {
  if (!(v > 0.0)) throw ConfigError(name + " must be positive");
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const ExperimentConfig& cfg) {
  require_positive(cfg.t_max, "tmax");
  DecayEnvelope theta = parse_envelope(cfg.theta);
  ClassifierOptions opt;
  opt.t_max = cfg.t_max;
  LogIntegralVerdict v =
      cfg.dim >= 2 ? log_integral_radial(theta, cfg.dim, opt) : log_integral_1d(theta, opt);

  json j;
  j["command"] = "classify";
  j["theta"] = cfg.theta;
  j["dim"] = cfg.dim;
  j["verdict"] = to_string(v.verdict);
  j["value"] = num(v.value);
  j["partial"] = num(v.partial);
  j["tail_estimate"] = num(v.tail_estimate);
  j["note"] = v.note;
  j["window_count"] = static_cast<int>(v.windows.size());

  std::ostringstream csv;
  csv << "window,integral,partial_sum\n";
  double acc = 0.0;
  for (std::size_t k = 0; k < v.windows.size(); ++k) {
    acc += v.windows[k];
    csv << k << ',' << format_double(v.windows[k]) << ',' << format_double(acc) << '\n';
  }
  emit_csv(cfg, "classify", csv.str());
  emit_report(cfg, "classify", j);
  return 0;
}

// ---------------------------------------------------------------------------
// construct

int cmd_construct(const ExperimentConfig& cfg) {
  require_positive(cfg.budget, "budget");
  DecayEnvelope theta = parse_envelope(cfg.theta);

  json j;
  j["command"] = "construct";
  j["theta"] = cfg.theta;
  j["budget"] = num(cfg.budget);
  j["dim"] = cfg.dim;

  try {
    ConstructionReport rep = construct_report(theta, cfg.budget);
    SampledFunction f;
    if (cfg.dim >= 2) {
      f = construct_radial(theta, cfg.dim, cfg.budget, cfg.points);
    } else {
      GridSpec g{1, cfg.points, std::max(rep.design.total_support, 1e-6)};
      f = symmetrize_and_shift(realize_time_domain(rep.design, g));
    }
    ensure_out_dir(cfg);
    save_sampled_function(f, artifact(cfg, "construct_function"));

    j["points"] = cfg.points;
    j["term_count"] = rep.design.term_count();
    j["total_support"] = num(rep.design.total_support);
    j["log_c"] = num(rep.certificate.log_c);
    j["max_residual"] = num(rep.certificate.max_residual);
    j["passed"] = rep.certificate.passed();
    json widths = json::array();
    for (double w : rep.design.widths) widths.push_back(num(w));
    j["widths"] = widths;

    std::ostringstream csv;
    csv << "k,width\n";
    for (std::size_t k = 0; k < rep.design.widths.size(); ++k)
      csv << k << ',' << format_double(rep.design.widths[k]) << '\n';
    emit_csv(cfg, "construct", csv.str());
    emit_report(cfg, "construct", j);
    return rep.certificate.passed() ? 0 : 2;
  } catch (const DivergentLogIntegral& e) {
    j["error"] = "DivergentLogIntegral";
    j["message"] = e.what();
  } catch (const InconclusiveLogIntegral& e) {
    j["error"] = "InconclusiveLogIntegral";
    j["message"] = e.what();
  } catch (const BudgetExhausted& e) {
    j["error"] = "BudgetExhausted";
    j["message"] = e.what();
  }
  emit_report(cfg, "construct", j);
  return 2;
}

// ---------------------------------------------------------------------------
// slice-check

struct SliceCase {
  std::string name;
  double support;
  double half_width;
  double tolerance;
  std::function<double(double)> profile;  // of rho^2
};

std::vector<SliceCase> slice_battery() {
  return {
      {"disc", 1.0, 4.0, 1e-3, [](double r2) { return profiles::disc(r2, 1.0); }},
      {"gaussian", 7.0, 8.0, 1e-6, [](double r2) { return profiles::gaussian(r2); }},
      {"bump-cos8", 1.0, 4.0, 1e-6, [](double r2) { return profiles::cos8_bump(r2, 1.0); }},
      {"bump-poly", 1.0, 4.0, 1e-6, [](double r2) { return profiles::poly_bump(r2, 1.0); }},
      {"mollifier", 1.0, 4.0, 1e-6, [](double r2) { return profiles::mollifier(r2, 1.0); }},
  };
}

int cmd_slice_check(const ExperimentConfig& cfg) {
  if (cfg.directions < 1) throw ConfigError("directions must be >= 1");
  if (cfg.lambda_count < 2) throw ConfigError("lambda_count must be >= 2");
  require_positive(cfg.lambda_max, "lambda_max");

  std::vector<SliceCase> cases;
  for (SliceCase& c : slice_battery()) {
    if (cfg.function == "all" || cfg.function == c.name) cases.push_back(std::move(c));
  }
  if (cases.empty())
    throw ConfigError("unknown slice battery function '" + cfg.function +
                      "' (disc, gaussian, bump-cos8, bump-poly, mollifier, all)");

  std::vector<double> lambdas(cfg.lambda_count);
  for (int k = 0; k < cfg.lambda_count; ++k)
    lambdas[k] = cfg.lambda_max * k / (cfg.lambda_count - 1);

  std::ostringstream csv;
  csv << "function,direction,angle,residual\n";
  json results = json::array();
  bool all_passed = true;

  for (const SliceCase& c : cases) {
    const double L = cfg.half_width > 0.0 ? cfg.half_width : c.half_width;
    GridSpec g{2, cfg.n, L};
    SampledFunction f(g, c.support);
    f.sample([&](const std::array<double, 3>& x) {
      return cplx(c.profile(x[0] * x[0] + x[1] * x[1]), 0.0);
    });

    double worst = 0.0;
    json per_direction = json::array();
    for (int d = 0; d < cfg.directions; ++d) {
      double angle = 3.14159265358979324 * d / cfg.directions;
      std::array<double, 3> omega{std::cos(angle), std::sin(angle), 0.0};
      double res = slice_projection_residual(f, omega, lambdas);
      worst = std::max(worst, res);
      per_direction.push_back(num(res));
      csv << c.name << ',' << d << ',' << format_double(angle) << ','
          << format_double(res) << '\n';
    }

    const double tol = cfg.tolerance > 0.0 ? cfg.tolerance : c.tolerance;
    json entry;
    entry["function"] = c.name;
    entry["half_width"] = num(L);
    entry["tolerance"] = num(tol);
    entry["max_residual"] = num(worst);
    entry["residuals"] = per_direction;
    entry["passed"] = worst <= tol;
    results.push_back(entry);
    all_passed = all_passed && worst <= tol;
  }

  json j;
  j["command"] = "slice-check";
  j["function"] = cfg.function;
  j["n"] = cfg.n;
  j["directions"] = cfg.directions;
  j["lambda_max"] = num(cfg.lambda_max);
  j["lambda_count"] = cfg.lambda_count;
  j["results"] = results;
  j["passed"] = all_passed;

  emit_csv(cfg, "slice_check", csv.str());
  emit_report(cfg, "slice_check", j);
  return all_passed ? 0 : 2;
}

// ---------------------------------------------------------------------------
// poisson-check

cplx box_phase_average(cplx w) {
  // (e^{iw} - 1) / (iw), the transform of the unit box; series near 0.
  if (std::abs(w) < 1e-6) {
    cplx iw(-w.imag(), w.real());
    return cplx(1.0, 0.0) + iw / 2.0 + iw * iw / 6.0;
  }
  cplx iw(-w.imag(), w.real());
  return (std::exp(iw) - 1.0) / iw;
}

int cmd_poisson_check(const ExperimentConfig& cfg) {
  DecayEnvelope theta = parse_envelope(cfg.theta);

  std::vector<std::pair<double, double>> points;
  for (double x : {-3.0, -1.5, 0.0, 1.5, 3.0})
    for (double y : {0.5, 1.0, 2.0, 4.0}) points.emplace_back(x, y);

  // Constant boundary data integrates to exactly the kernel mass.
  BoundaryLogData ones;
  const int mass_n = 1025;
  ones.t.resize(mass_n);
  ones.log_mod.assign(mass_n, 1.0);
  for (int i = 0; i < mass_n; ++i) ones.t[i] = -64.0 + 128.0 * i / (mass_n - 1);
  ones.tail = TailModel{0.0, 1.0};
  double mass_error = 0.0;
  for (const auto& [x, y] : points)
    mass_error = std::max(mass_error, std::abs(poisson_integral(ones, x, y) - 1.0));

  // Battery of functions bounded by 1 on the closed upper half-plane:
  // g_a(z) = e^{iaz} * average of e^{2iazt} over t in [0,1].
  std::ostringstream csv;
  csv << "scale,x,y,lhs,rhs,margin\n";
  double min_margin = 1e300;
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    auto g = [a](std::complex<double> z) {
      return std::exp(std::complex<double>(0.0, 1.0) * (a * z)) *
             box_phase_average(2.0 * a * z);
    };
    BoundaryLogData b;
    const int nb = 16385;
    b.t.resize(nb);
    b.log_mod.resize(nb);
    for (int i = 0; i < nb; ++i) {
      b.t[i] = -2048.0 + 4096.0 * i / (nb - 1);
      b.log_mod[i] = std::log(std::abs(g(std::complex<double>(b.t[i], 0.0))));
    }
    // |g_a(t)| ~ 1/(2a|t|) off the zero set, a clean power-law tail.
    b.tail = TailModel{-1.0, -std::log(2.0 * a)};
    std::vector<MajorantPoint> pts = log_majorant_check(g, b, points);
    for (const MajorantPoint& p : pts) {
      min_margin = std::min(min_margin, p.margin);
      csv << format_double(a) << ',' << format_double(p.x) << ',' << format_double(p.y)
          << ',' << format_double(p.lhs) << ',' << format_double(p.rhs) << ','
          << format_double(p.margin) << '\n';
    }
  }

  // Divergence mechanism at z = i for the requested envelope.
  DivergenceScan scan = poisson_divergence_scan(theta, 0.0, 1.0);
  Verdict verdict = log_integral_1d(theta).verdict;
  const bool need_crossing = verdict == Verdict::Divergent;

  const bool passed =
      mass_error <= 1e-10 && min_margin >= -1e-6 && (!need_crossing || scan.crossed);

  json j;
  j["command"] = "poisson-check";
  j["theta"] = cfg.theta;
  j["theta_verdict"] = to_string(verdict);
  j["kernel_mass_error"] = num(mass_error);
  j["min_margin"] = num(min_margin);
  j["scan_crossed"] = scan.crossed;
  j["scan_doublings"] = static_cast<std::int64_t>(scan.doublings);
  j["scan_value"] = num(scan.value);
  j["scan_exhausted_numeric_range"] = scan.exhausted_numeric_range;
  j["passed"] = passed;

  emit_csv(cfg, "poisson_check", csv.str());
  emit_report(cfg, "poisson_check", j);
  return passed ? 0 : 2;
}

// ---------------------------------------------------------------------------
// mn-transform

int cmd_mn_transform(const ExperimentConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("mn-transform needs --input");
  MotionGroupFunction f = load_motion_function(cfg.input);
  RepresentationPoint rep{cfg.r};
  const int band = cfg.band >= 0 ? cfg.band : default_band(cfg.r, f.support_radius());
  GroupFourierMatrix m = group_fourier(f, rep, band);

  ensure_out_dir(cfg);
  save_group_matrix(m, artifact(cfg, "mn_transform_matrix"));

  json j;
  j["command"] = "mn-transform";
  j["input"] = cfg.input;
  j["r"] = num(cfg.r);
  j["band"] = band;
  j["hs_norm"] = num(m.hs_norm);
  j["matrix"] = "mn_transform_matrix.json";
  emit_report(cfg, "mn_transform", j);
  return 0;
}

// ---------------------------------------------------------------------------
// mn-decay

struct ProfileFit {
  bool all_zero = true;
  double log_c = 0.0;
  double max_violation = 0.0;
  double violation_radius = 0.0;
  bool passed = true;
};

/// Head-fit envelope certificate over a sampled decay profile: the constant
/// is fitted on the head of the radius range only, so the tail is a real
/// test. Half a unit of log-scale slack separates fit noise from a genuine
/// envelope crossing.
ProfileFit fit_decay_profile(const std::vector<std::pair<double, double>>& profile,
                             const DecayEnvelope& theta) {
  constexpr double kSlack = 0.5;
  ProfileFit fit;
  if (profile.empty()) return fit;

  const std::size_t head_idx = std::min<std::size_t>(7, profile.size() - 1);
  const double head_r = std::max(profile[head_idx].first, profile.back().first / 20.0);

  double log_c = -1e300;
  for (const auto& [r, v] : profile) {
    if (r > head_r || v <= 1e-300) continue;
    log_c = std::max(log_c, std::log(v) + theta(r));
  }
  if (log_c == -1e300) {
    // No usable head samples; fall back to a global fit, which can only
    // make the certificate easier to satisfy.
    for (const auto& [r, v] : profile) {
      if (v <= 1e-300) continue;
      log_c = std::max(log_c, std::log(v) + theta(r));
    }
    if (log_c == -1e300) return fit;  // identically zero data
  }

  fit.all_zero = false;
  fit.log_c = log_c;
  for (const auto& [r, v] : profile) {
    if (v <= 1e-300) continue;
    const double excess = std::log(v) + theta(r) - log_c;
    if (excess > fit.max_violation) fit.max_violation = excess;
    if (excess > kSlack && fit.violation_radius == 0.0) fit.violation_radius = r;
  }
  fit.passed = fit.max_violation <= kSlack;
  return fit;
}

int cmd_mn_decay(const ExperimentConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("mn-decay needs --input");
  require_positive(cfg.r_max, "r_max");
  if (cfg.r_points < 2) throw ConfigError("r_points must be >= 2");

  MotionGroupFunction f = load_motion_function(cfg.input);
  DecayEnvelope theta = parse_envelope(cfg.theta);

  std::vector<double> r_grid(cfg.r_points);
  for (int k = 0; k < cfg.r_points; ++k) r_grid[k] = cfg.r_max * (k + 1) / cfg.r_points;
  const int band = cfg.band >= 0 ? cfg.band : default_band(cfg.r_max, f.support_radius());

  std::vector<std::pair<double, double>> profile = hs_decay_profile(f, r_grid, band);

  std::ostringstream csv;
  csv << "r,hs_norm\n";
  for (const auto& [rv, hs] : profile)
    csv << format_double(rv) << ',' << format_double(hs) << '\n';

  ProfileFit fit = fit_decay_profile(profile, theta);

  json j;
  j["command"] = "mn-decay";
  j["input"] = cfg.input;
  j["theta"] = cfg.theta;
  j["band"] = band;
  j["r_max"] = num(cfg.r_max);
  j["r_points"] = cfg.r_points;
  j["input_zero"] = fit.all_zero;
  if (!fit.all_zero) {
    j["fitted_log_c"] = num(fit.log_c);
    j["max_violation"] = num(fit.max_violation);
    if (!fit.passed) j["violation_radius"] = num(fit.violation_radius);
  }
  j["passed"] = fit.passed;

  emit_csv(cfg, "mn_decay", csv.str());
  emit_report(cfg, "mn_decay", j);
  return fit.passed ? 0 : 2;
}

// ---------------------------------------------------------------------------
// schrodinger-rn

int cmd_schrodinger_rn(const ExperimentConfig& cfg) {
  require_positive(cfg.half_width, "half_width");
  if (cfg.t0 == 0.0) throw ConfigError("t0 must be non-zero");
  DecayEnvelope theta = parse_envelope(cfg.theta);

  GridSpec g{cfg.dim, cfg.n, cfg.half_width};
  double support;
  std::function<double(double)> profile;
  if (cfg.function == "bump") {
    support = 1.0;
    profile = [](double r2) { return profiles::cos8_bump(r2, 1.0); };
  } else if (cfg.function == "gaussian") {
    support = 9.0;
    profile = [](double r2) { return profiles::gaussian(r2); };
  } else if (cfg.function == "zero") {
    support = 1.0;
    profile = [](double) { return 0.0; };
  } else {
    throw ConfigError("unknown battery function '" + cfg.function +
                      "' (bump, gaussian, zero)");
  }
  if (support > cfg.half_width) throw ConfigError("half_width too small for the battery function");

  SampledFunction f(g, support);
  f.sample([&](const std::array<double, 3>& x) {
    double r2 = x[0] * x[0];
    if (cfg.dim >= 2) r2 += x[1] * x[1];
    if (cfg.dim >= 3) r2 += x[2] * x[2];
    return cplx(profile(r2), 0.0);
  });

  UniquenessReport rep = uniqueness_experiment_rn(f, cfg.t0, theta);
  EvolvedState ev = free_propagate(f, cfg.t0);

  ensure_out_dir(cfg);
  if (cfg.save_state) {
    save_sampled_function(ev.state, artifact(cfg, "schrodinger_rn_state"));
    std::ifstream hin(artifact(cfg, "schrodinger_rn_state.json"));
    json h = json::parse(hin);
    h["t"] = num(ev.time);
    write_text(artifact(cfg, "schrodinger_rn_state.json"), h.dump(2) + "\n");
  }

  // Modulus profile along the first axis through the center.
  std::ostringstream csv;
  csv << "x,abs_u\n";
  const int mid = cfg.n / 2;
  for (int i = 0; i < cfg.n; ++i) {
    cplx u = cfg.dim == 1 ? ev.state.at(i)
                          : (cfg.dim == 2 ? ev.state.at(i, mid) : ev.state.at(i, mid, mid));
    csv << format_double(g.coord(i)) << ',' << format_double(std::abs(u)) << '\n';
  }

  json j;
  j["command"] = "schrodinger-rn";
  j["function"] = cfg.function;
  j["theta"] = cfg.theta;
  j["t0"] = num(cfg.t0);
  j["dim"] = cfg.dim;
  j["n"] = cfg.n;
  j["half_width"] = num(cfg.half_width);
  j["verdict"] = to_string(rep.theta_verdict);
  j["input_zero"] = rep.input_zero;
  j["envelope_holds"] = rep.envelope_holds;
  if (!rep.input_zero) {
    j["fitted_log_c"] = num(rep.fitted_log_c);
    j["max_violation"] = num(rep.max_violation);
    if (!rep.envelope_holds) j["violation_radius"] = num(rep.violation_radius);
  }
  j["consistent"] = rep.consistent;

  emit_csv(cfg, "schrodinger_rn", csv.str());
  emit_report(cfg, "schrodinger_rn", j);
  return rep.consistent ? 0 : 2;
}

// ---------------------------------------------------------------------------
// schrodinger-mn

int cmd_schrodinger_mn(const ExperimentConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("schrodinger-mn needs --input");
  if (cfg.t0 == 0.0) throw ConfigError("t0 must be non-zero");
  MotionGroupFunction f = load_motion_function(cfg.input);
  DecayEnvelope theta = parse_envelope(cfg.theta);

  UniquenessReport rep = uniqueness_experiment_mn(f, cfg.t0, theta);
  MotionEvolvedState ev = motion_propagate(f, cfg.t0);

  ensure_out_dir(cfg);
  if (cfg.save_state) {
    save_motion_function(ev.state, artifact(cfg, "schrodinger_mn_state"));
    std::ifstream hin(artifact(cfg, "schrodinger_mn_state.json"));
    json h = json::parse(hin);
    h["t"] = num(ev.time);
    write_text(artifact(cfg, "schrodinger_mn_state.json"), h.dump(2) + "\n");
  }

  // Per-mode masses before and after: the evolution must not mix modes.
  ModeSpectrum before = peter_weyl_decompose(f);
  ModeSpectrum after = peter_weyl_decompose(ev.state);
  std::ostringstream csv;
  csv << "mode,l2_before,l2_after\n";
  for (std::size_t k = 0; k < before.modes.size(); ++k) {
    csv << before.modes[k] << ','
        << format_double(std::sqrt(before.spectra[k].parseval_energy())) << ','
        << format_double(std::sqrt(after.spectra[k].parseval_energy())) << '\n';
  }

  json j;
  j["command"] = "schrodinger-mn";
  j["input"] = cfg.input;
  j["theta"] = cfg.theta;
  j["t0"] = num(cfg.t0);
  j["verdict"] = to_string(rep.theta_verdict);
  j["input_zero"] = rep.input_zero;
  j["envelope_holds"] = rep.envelope_holds;
  if (!rep.input_zero) {
    j["fitted_log_c"] = num(rep.fitted_log_c);
    j["max_violation"] = num(rep.max_violation);
    if (!rep.envelope_holds) j["violation_radius"] = num(rep.violation_radius);
  }
  j["consistent"] = rep.consistent;

  emit_csv(cfg, "schrodinger_mn", csv.str());
  emit_report(cfg, "schrodinger_mn", j);
  return rep.consistent ? 0 : 2;
}

// ---------------------------------------------------------------------------
// plancherel

int cmd_plancherel(const ExperimentConfig& cfg) {
  if (cfg.count < 1) throw ConfigError("count must be >= 1");
  require_positive(cfg.half_width, "half_width");
  require_positive(cfg.r_max, "r_max");

  GridSpec g{2, cfg.n, cfg.half_width};
  const double support = 0.9 * cfg.half_width;
  Rng rng(cfg.seed);

  std::vector<MotionGroupFunction> fs;
  json coeffs = json::array();
  for (int i = 0; i < cfg.count; ++i) {
    const double c0 = rng.uniform(0.5, 2.0);
    const double c1 = rng.uniform(0.5, 2.0);
    const double c2 = rng.uniform(0.5, 2.0);
    coeffs.push_back(json::array({num(c0), num(c1), num(c2)}));
    MotionGroupFunction f(g, cfg.angles, support);
    f.sample([&](double x, double y, double) {
      const double r2 = x * x + y * y;
      const double u = r2 / (support * support);
      return cplx((c0 + c1 * u + c2 * u * u) * profiles::mollifier(r2, support * support),
                  0.0);
    });
    fs.push_back(std::move(f));
  }

  const int band = cfg.band >= 0 ? cfg.band : default_band(cfg.r_max, support);
  PlancherelReport rep = plancherel_consistency(fs, band, cfg.r_max, cfg.r_points);

  std::ostringstream csv;
  csv << "index,norm_sq,plancherel_integral,ratio\n";
  for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
    csv << i << ',' << format_double(rep.norms_sq[i]) << ','
        << format_double(rep.plancherel_integrals[i]) << ','
        << format_double(rep.ratios[i]) << '\n';
  }

  json j;
  j["command"] = "plancherel";
  j["seed"] = cfg.seed;
  j["count"] = cfg.count;
  j["n"] = cfg.n;
  j["half_width"] = num(cfg.half_width);
  j["angles"] = cfg.angles;
  j["band"] = band;
  j["r_max"] = num(cfg.r_max);
  j["r_points"] = cfg.r_points;
  j["battery_coefficients"] = coeffs;
  json ratios = json::array();
  for (double x : rep.ratios) ratios.push_back(num(x));
  j["ratios"] = ratios;
  j["max_relative_spread"] = num(rep.max_relative_spread);
  j["consistent"] = rep.consistent;

  emit_csv(cfg, "plancherel", csv.str());
  emit_report(cfg, "plancherel", j);
  return rep.consistent ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  ExperimentConfig cfg;
  try {
    // The subcommand name decides the baseline defaults and must be known
    // before the config file is applied, so scan for both up front.
    std::string command;
    for (const std::string& a : args) {
      if (!a.empty() && a[0] != '-') {
        command = a;
        break;
      }
    }
    apply_command_defaults(cfg, command);
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        apply_config_file(cfg, args[i + 1]);
        break;
      }
      if (args[i].rfind("--config=", 0) == 0) {
        apply_config_file(cfg, args[i].substr(9));
        break;
      }
    }

    CLI::App app{"numerical toolkit for support-decay tradeoffs on the plane and its motion group"};
    app.name("pwmotion");
    app.require_subcommand(1);
    app.add_option("--config", cfg.config_path, "JSON config file (applied before flags)");

    auto add_common = [&](CLI::App* sub) {
      sub->add_option("--config", cfg.config_path, "JSON config file (applied before flags)");
      sub->add_option("--out", cfg.out_dir, "artifact directory")->capture_default_str();
      sub->add_option("--seed", cfg.seed, "seed for randomized batteries")
          ->capture_default_str();
    };

    CLI::App* classify = app.add_subcommand(
        "classify", "classify the decay-budget integral of an envelope");
    classify->add_option("--theta", cfg.theta, "envelope spec")->capture_default_str();
    classify->add_option("--dim", cfg.dim, "1: line integral, >=2: radial form")
        ->capture_default_str();
    classify->add_option("--tmax", cfg.t_max, "truncation radius")->capture_default_str();
    add_common(classify);

    CLI::App* construct = app.add_subcommand(
        "construct", "build a compactly supported function with certified decay");
    construct->add_option("--theta", cfg.theta, "envelope spec")->capture_default_str();
    construct->add_option("--budget", cfg.budget, "support radius budget")
        ->capture_default_str();
    construct->add_option("--dim", cfg.dim, "dimension of the radial lift")
        ->capture_default_str();
    construct->add_option("--points", cfg.points, "realization grid points")
        ->capture_default_str();
    add_common(construct);

    CLI::App* slice = app.add_subcommand(
        "slice-check", "cross-validate the transform against hyperplane integrals");
    slice->add_option("--function", cfg.function,
                      "battery member (disc, gaussian, bump-cos8, bump-poly, mollifier, all)")
        ->capture_default_str();
    slice->add_option("--n", cfg.n, "grid points per axis")->capture_default_str();
    slice->add_option("--half-width", cfg.half_width, "box half-width (default: per function)");
    slice->add_option("--directions", cfg.directions, "number of directions")
        ->capture_default_str();
    slice->add_option("--lambda-max", cfg.lambda_max, "largest probed frequency")
        ->capture_default_str();
    slice->add_option("--lambda-count", cfg.lambda_count, "probed frequencies per direction")
        ->capture_default_str();
    slice->add_option("--tolerance", cfg.tolerance, "override the per-function tolerance");
    add_common(slice);

    CLI::App* poisson = app.add_subcommand(
        "poisson-check", "half-plane kernel mass, log-majorant margins, divergence scan");
    poisson->add_option("--theta", cfg.theta, "envelope spec for the divergence scan")
        ->capture_default_str();
    add_common(poisson);

    CLI::App* mnt = app.add_subcommand(
        "mn-transform", "operator Fourier coefficient of a motion-group function");
    mnt->add_option("--input", cfg.input, "motion-group function artifact");
    mnt->add_option("--r", cfg.r, "representation radius")->capture_default_str();
    mnt->add_option("--band", cfg.band, "matrix band (negative: automatic)")
        ->capture_default_str();
    add_common(mnt);

    CLI::App* mnd = app.add_subcommand(
        "mn-decay", "Hilbert-Schmidt decay profile with an envelope certificate");
    mnd->add_option("--input", cfg.input, "motion-group function artifact");
    mnd->add_option("--theta", cfg.theta, "envelope spec")->capture_default_str();
    mnd->add_option("--r-max", cfg.r_max, "largest representation radius")
        ->capture_default_str();
    mnd->add_option("--r-points", cfg.r_points, "radius grid size")->capture_default_str();
    mnd->add_option("--band", cfg.band, "matrix band (negative: automatic)")
        ->capture_default_str();
    add_common(mnd);

    CLI::App* srn = app.add_subcommand(
        "schrodinger-rn", "free evolution on the plane or line with a decay-envelope verdict");
    srn->add_option("--theta", cfg.theta, "envelope spec")->capture_default_str();
    srn->add_option("--t0", cfg.t0, "evolution time (non-zero)")->capture_default_str();
    srn->add_option("--function", cfg.function, "battery member (bump, gaussian, zero)")
        ->capture_default_str();
    srn->add_option("--dim", cfg.dim, "spatial dimension")->capture_default_str();
    srn->add_option("--n", cfg.n, "grid points per axis")->capture_default_str();
    srn->add_option("--half-width", cfg.half_width, "box half-width")->capture_default_str();
    srn->add_flag("--save-state", cfg.save_state, "write the evolved state artifact");
    add_common(srn);

    CLI::App* smn = app.add_subcommand(
        "schrodinger-mn", "free evolution on the motion group with a decay-envelope verdict");
    smn->add_option("--input", cfg.input, "motion-group function artifact");
    smn->add_option("--theta", cfg.theta, "envelope spec")->capture_default_str();
    smn->add_option("--t0", cfg.t0, "evolution time (non-zero)")->capture_default_str();
    smn->add_flag("--save-state", cfg.save_state, "write the evolved state artifact");
    add_common(smn);

    CLI::App* plan = app.add_subcommand(
        "plancherel", "norm-to-integral ratio constancy over a random battery");
    plan->add_option("--count", cfg.count, "battery size")->capture_default_str();
    plan->add_option("--n", cfg.n, "grid points per axis")->capture_default_str();
    plan->add_option("--half-width", cfg.half_width, "box half-width")->capture_default_str();
    plan->add_option("--angles", cfg.angles, "circle sample count")->capture_default_str();
    plan->add_option("--band", cfg.band, "matrix band (negative: automatic)")
        ->capture_default_str();
    plan->add_option("--r-max", cfg.r_max, "radius integration limit")->capture_default_str();
    plan->add_option("--r-points", cfg.r_points, "radius quadrature points (odd)")
        ->capture_default_str();
    add_common(plan);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      return app.exit(e) == 0 ? 0 : 1;
    }

    if (classify->parsed()) return cmd_classify(cfg);
    if (construct->parsed()) return cmd_construct(cfg);
    if (slice->parsed()) return cmd_slice_check(cfg);
    if (poisson->parsed()) return cmd_poisson_check(cfg);
    if (mnt->parsed()) return cmd_mn_transform(cfg);
    if (mnd->parsed()) return cmd_mn_decay(cfg);
    if (srn->parsed()) return cmd_schrodinger_rn(cfg);
    if (smn->parsed()) return cmd_schrodinger_mn(cfg);
    if (plan->parsed()) return cmd_plancherel(cfg);
    return 1;
  } catch (const Error& e) {
    json j;
    j["error"] = error_name(e);
    j["message"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json j;
    j["error"] = "Error";
    j["message"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return 1;
  }
}

}  // namespace pwmotion

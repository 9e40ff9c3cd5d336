#include "qlr/config.hpp"

#include "qlr/davies.hpp"
#include "qlr/dephasing.hpp"
#include "qlr/lindblad.hpp"
#include "qlr/opcore.hpp"
#include "qlr/pauli.hpp"
#include "qlr/quasifree.hpp"
#include "qlr/response.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>
#include <variant>

namespace qlr::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// validation helpers: unknown keys are errors, not warnings
// ---------------------------------------------------------------------------

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& context) {
  if (!obj.is_object())
    throw ConfigError(context + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError(context + ": unknown key '" + key + "'");
}

const json& require(const json& obj, const std::string& key,
                    const std::string& context) {
  if (!obj.contains(key))
    throw ConfigError(context + ": missing required key '" + key + "'");
  return obj.at(key);
}

double require_number(const json& obj, const std::string& key,
                      const std::string& context) {
  const json& v = require(obj, key, context);
  if (!v.is_number())
    throw ConfigError(context + "." + key + ": expected a number");
  return v.get<double>();
}

Index require_integer(const json& obj, const std::string& key,
                      const std::string& context) {
  const json& v = require(obj, key, context);
  if (!v.is_number_integer())
    throw ConfigError(context + "." + key + ": expected an integer");
  return v.get<Index>();
}

Complex parse_scalar(const json& v, const std::string& context) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex(v[0].get<double>(), v[1].get<double>());
  throw ConfigError(context + ": matrix entries must be numbers or [re, im]");
}

Matrix parse_matrix(const json& v, const std::string& context) {
  if (!v.is_array() || v.empty())
    throw ConfigError(context + ": expected a non-empty array of rows");
  const Index rows = static_cast<Index>(v.size());
  Matrix m(rows, rows);
  for (Index i = 0; i < rows; ++i) {
    const json& row = v[i];
    if (!row.is_array() || static_cast<Index>(row.size()) != rows)
      throw ConfigError(context + ": matrix must be square");
    for (Index j = 0; j < rows; ++j)
      m(i, j) = parse_scalar(row[j], context);
  }
  return m;
}

Matrix parse_operator(const json& v, const std::string& context) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (name == "sigma_x") return pauli::x();
    if (name == "sigma_y") return pauli::y();
    if (name == "sigma_z") return pauli::z();
    if (name == "identity") return pauli::id2();
    throw ConfigError(context + ": unknown operator name '" + name + "'");
  }
  return parse_matrix(v, context);
}

RealVector linspace(double start, double stop, Index points) {
  RealVector v(points);
  if (points == 1) {
    v(0) = start;
    return v;
  }
  for (Index k = 0; k < points; ++k)
    v(k) = start + (stop - start) * double(k) / double(points - 1);
  return v;
}

RealVector parse_axis(const json& grid, const std::string& key,
                      const std::string& context) {
  const json& g = require(grid, key, context);
  check_keys(g, {"start", "stop", "points"}, context + "." + key);
  const double start = require_number(g, "start", context + "." + key);
  const double stop = require_number(g, "stop", context + "." + key);
  const Index points = require_integer(g, "points", context + "." + key);
  if (points < 1)
    throw ConfigError(context + "." + key + ": points must be >= 1");
  if (points > 1 && stop <= start)
    throw ConfigError(context + "." + key + ": stop must exceed start");
  return linspace(start, stop, points);
}

// ---------------------------------------------------------------------------
// model / perturbation / observable parsing
// ---------------------------------------------------------------------------

struct SmallModel {
  SuperOperator l0;
  DensityMatrix rho;
};

struct ChainModel {
  Index sites;
  double gamma;
  double h;
  XYRates rates;
  QuasiFreeGenerator gen0;
};

using ParsedModel = std::variant<SmallModel, ChainModel>;

DensityMatrix pick_steady_state(const SuperOperator& l0) {
  const SteadyStateResult ss = steady_states(l0);
  if (ss.states.empty())
    throw NumericalError(
        "model: no valid steady state could be reconstructed from Ker L0");
  return ss.states.front();
}

ParsedModel parse_model(const json& cfg) {
  const json& m = require(cfg, "model", "config");
  const std::string kind =
      require(m, "kind", "model").get<std::string>();

  if (kind == "lindblad" || kind == "dephasing") {
    check_keys(m, {"kind", "hamiltonian", "jumps"}, "model");
    const Matrix h = parse_matrix(require(m, "hamiltonian", "model"),
                                  "model.hamiltonian");
    std::vector<Matrix> jumps;
    const json& js = require(m, "jumps", "model");
    if (!js.is_array()) throw ConfigError("model.jumps: expected an array");
    for (const auto& j : js)
      jumps.push_back(parse_matrix(j, "model.jumps"));
    const LindbladGenerator gen(h, jumps);
    if (kind == "dephasing")
      dephasing_from_commuting(gen);  // validates commutativity up front
    SuperOperator l0 = build_superoperator(gen);
    DensityMatrix rho = pick_steady_state(l0);
    return SmallModel{std::move(l0), std::move(rho)};
  }

  if (kind == "davies_qubit") {
    check_keys(m, {"kind", "delta", "temperature", "b", "gamma"}, "model");
    const DaviesQubit q(require_number(m, "delta", "model"),
                        require_number(m, "temperature", "model"),
                        require_number(m, "b", "model"),
                        require_number(m, "gamma", "model"));
    return SmallModel{build_superoperator(q.generator()), q.gibbs_state()};
  }

  if (kind == "xy_chain") {
    check_keys(m, {"kind", "sites", "gamma", "h", "rates", "temperatures"},
               "model");
    const Index sites = require_integer(m, "sites", "model");
    const double gamma = require_number(m, "gamma", "model");
    const double h = require_number(m, "h", "model");
    XYRates rates;
    if (m.contains("rates") && m.contains("temperatures"))
      throw ConfigError("model: give either rates or temperatures, not both");
    if (m.contains("rates")) {
      const json& r = m.at("rates");
      check_keys(r,
                 {"gamma1_left", "gamma2_left", "gamma1_right",
                  "gamma2_right"},
                 "model.rates");
      rates.gamma1_left = require_number(r, "gamma1_left", "model.rates");
      rates.gamma2_left = require_number(r, "gamma2_left", "model.rates");
      rates.gamma1_right = require_number(r, "gamma1_right", "model.rates");
      rates.gamma2_right = require_number(r, "gamma2_right", "model.rates");
    } else if (m.contains("temperatures")) {
      const json& r = m.at("temperatures");
      check_keys(r, {"gamma1_left", "t_left", "gamma1_right", "t_right"},
                 "model.temperatures");
      rates = xy_rates_from_temperatures(
          h, require_number(r, "gamma1_left", "model.temperatures"),
          require_number(r, "t_left", "model.temperatures"),
          require_number(r, "gamma1_right", "model.temperatures"),
          require_number(r, "t_right", "model.temperatures"));
    } else {
      throw ConfigError("model: xy_chain needs rates or temperatures");
    }
    QuasiFreeGenerator gen0 = build_xy_chain(sites, gamma, h, rates);
    return ChainModel{sites, gamma, h, rates, std::move(gen0)};
  }

  throw ConfigError("model.kind: unknown model kind '" + kind + "'");
}

PerturbationSpec parse_small_perturbation(const json& cfg) {
  const json& p = require(cfg, "perturbation", "config");
  const std::string kind =
      require(p, "kind", "perturbation").get<std::string>();
  if (kind == "hamiltonian") {
    check_keys(p, {"kind", "operator"}, "perturbation");
    return PerturbationSpec::hamiltonian(parse_operator(
        require(p, "operator", "perturbation"), "perturbation.operator"));
  }
  if (kind == "generator") {
    check_keys(p, {"kind", "hamiltonian", "jumps"}, "perturbation");
    const Matrix h = parse_matrix(require(p, "hamiltonian", "perturbation"),
                                  "perturbation.hamiltonian");
    std::vector<Matrix> jumps;
    for (const auto& j : require(p, "jumps", "perturbation"))
      jumps.push_back(parse_matrix(j, "perturbation.jumps"));
    return PerturbationSpec::generator(LindbladGenerator(h, jumps));
  }
  throw ConfigError("perturbation.kind: '" + kind +
                    "' is not valid for this model");
}

QuasiFreeGenerator parse_chain_perturbation(const json& cfg,
                                            const ChainModel& model) {
  const json& p = require(cfg, "perturbation", "config");
  const std::string kind =
      require(p, "kind", "perturbation").get<std::string>();
  const Index n = model.gen0.modes();
  if (kind == "xy_field_shift") {
    check_keys(p, {"kind"}, "perturbation");
    return build_xys(MajoranaQuadratic::total_z(n), {});
  }
  if (kind == "xy_dissipative") {
    // L1 = L0 + i[H, .]: the Hamiltonian cancels, the dissipator remains
    check_keys(p, {"kind"}, "perturbation");
    const RealMatrix zero = RealMatrix::Zero(2 * n, 2 * n);
    return build_xys(MajoranaQuadratic(zero), model.gen0.lvecs);
  }
  throw ConfigError("perturbation.kind: '" + kind +
                    "' is not valid for xy_chain");
}

Matrix parse_small_observable(const json& cfg) {
  const json& o = require(cfg, "observable", "config");
  check_keys(o, {"operator"}, "observable");
  return parse_operator(require(o, "operator", "observable"),
                        "observable.operator");
}

MajoranaQuadratic parse_chain_observable(const json& cfg,
                                         const ChainModel& model) {
  const json& o = require(cfg, "observable", "config");
  const std::string kind =
      require(o, "kind", "observable").get<std::string>();
  if (kind == "total_z") {
    check_keys(o, {"kind"}, "observable");
    return MajoranaQuadratic::total_z(model.gen0.modes());
  }
  if (kind == "site_z") {
    check_keys(o, {"kind", "site"}, "observable");
    return MajoranaQuadratic::site_z(
        model.gen0.modes(), require_integer(o, "site", "observable"));
  }
  throw ConfigError("observable.kind: '" + kind +
                    "' is not valid for xy_chain");
}

double resolve_epsilon(const json& cfg, const RunOptions& opts,
                       const ParsedModel& model) {
  if (opts.epsilon) return *opts.epsilon;
  if (cfg.contains("epsilon")) {
    if (!cfg.at("epsilon").is_number())
      throw ConfigError("epsilon: expected a number");
    return cfg.at("epsilon").get<double>();
  }
  // default regularization: 1e-8 x spectral span
  if (std::holds_alternative<SmallModel>(model))
    return default_epsilon(std::get<SmallModel>(model).l0);
  const auto& chain = std::get<ChainModel>(model);
  return 1e-8 * 2.0 * chain.gen0.x_eigenvalues.cwiseAbs().maxCoeff();
}

// deterministic data-parallel map: results land by index
void parallel_for(Index n, int jobs, const std::function<void(Index)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (Index k = 0; k < n; ++k) body(k);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min<Index>(jobs, n);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (Index k = next++; k < n; k = next++) body(k);
    });
  for (auto& th : pool) th.join();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> provenance_header(const std::string& subcommand,
                                           const json& cfg,
                                           const RunOptions& opts,
                                           double epsilon) {
  std::vector<std::string> lines;
  lines.push_back("qlr " + subcommand);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(cfg.dump())));
  lines.push_back("config-hash: " + std::string(hash));
  char eps[64];
  std::snprintf(eps, sizeof eps, "%.17g", epsilon);
  lines.push_back("epsilon: " + std::string(eps));
  lines.push_back(
      "tolerances: herm=1e-10 trace=1e-10 psd=1e-10 rank=1e-12 spec=1e-9");
  if (opts.timestamp) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&tt));
    lines.push_back("generated-at: " + std::string(buf));
  }
  return lines;
}

const std::set<std::string> kTopLevelKeys = {
    "model", "perturbation", "observable", "grid",
    "epsilon", "amplitude", "output"};

const json& grid_section(const json& cfg) {
  const json& g = require(cfg, "grid", "config");
  check_keys(g, {"time", "frequency", "sizes", "fields", "correlations"},
             "grid");
  return g;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

SweepResult run_chi_time(const json& cfg, const RunOptions& opts) {
  const ParsedModel model = parse_model(cfg);
  const RealVector t_grid = parse_axis(grid_section(cfg), "time", "grid");

  SweepResult out;
  out.columns = {"t", "chi"};
  RealVector values;
  if (std::holds_alternative<SmallModel>(model)) {
    const auto& sm = std::get<SmallModel>(model);
    const auto pert = parse_small_perturbation(cfg);
    const Matrix a = parse_small_observable(cfg);
    values = chi_time(sm.l0, pert, sm.rho, a, t_grid).values;
  } else {
    const auto& ch = std::get<ChainModel>(model);
    const auto gen1 = parse_chain_perturbation(cfg, ch);
    const auto a = parse_chain_observable(cfg, ch);
    const CovarianceMatrix c0 = ness_covariance(ch.gen0);
    values = chi_quasifree_time(ch.gen0, gen1, c0, a, t_grid).values;
  }
  out.header_lines = provenance_header("chi-time", cfg, opts, 0.0);
  for (Index k = 0; k < t_grid.size(); ++k)
    out.rows.push_back({t_grid(k), values(k)});
  return out;
}

SweepResult run_chi_freq(const json& cfg, const RunOptions& opts) {
  const ParsedModel model = parse_model(cfg);
  const RealVector omega = parse_axis(grid_section(cfg), "frequency", "grid");
  const double epsilon = resolve_epsilon(cfg, opts, model);

  Vector values(omega.size());
  if (std::holds_alternative<SmallModel>(model)) {
    const auto& sm = std::get<SmallModel>(model);
    const auto pert = parse_small_perturbation(cfg);
    const Matrix a = parse_small_observable(cfg);
    parallel_for(omega.size(), opts.jobs, [&](Index k) {
      RealVector one(1);
      one(0) = omega(k);
      values(k) = chi_freq(sm.l0, pert, sm.rho, a, one, epsilon).values(0);
    });
  } else {
    const auto& ch = std::get<ChainModel>(model);
    const auto gen1 = parse_chain_perturbation(cfg, ch);
    const auto a = parse_chain_observable(cfg, ch);
    const CovarianceMatrix c0 = ness_covariance(ch.gen0);
    // one spectral precomputation, then an independent sum per frequency
    const FrequencyResponse fr =
        chi_quasifree_freq(ch.gen0, gen1, c0, a, omega, epsilon);
    values = fr.values;
  }

  SweepResult out;
  out.columns = {"omega", "re_chi", "im_chi"};
  out.header_lines = provenance_header("chi-freq", cfg, opts, epsilon);
  for (Index k = 0; k < omega.size(); ++k)
    out.rows.push_back({omega(k), values(k).real(), values(k).imag()});
  return out;
}

SweepResult run_mhr(const json& cfg, const RunOptions& opts) {
  const ParsedModel model = parse_model(cfg);
  const RealVector omega = parse_axis(grid_section(cfg), "frequency", "grid");
  const double epsilon = resolve_epsilon(cfg, opts, model);

  RealVector values(omega.size());
  if (std::holds_alternative<SmallModel>(model)) {
    const auto& sm = std::get<SmallModel>(model);
    const auto pert = parse_small_perturbation(cfg);
    parallel_for(omega.size(), opts.jobs, [&](Index k) {
      values(k) = mhr(sm.l0, pert, sm.rho, omega(k), epsilon);
    });
  } else {
    const auto& ch = std::get<ChainModel>(model);
    const auto gen1 = parse_chain_perturbation(cfg, ch);
    const CovarianceMatrix c0 = ness_covariance(ch.gen0);
    parallel_for(omega.size(), opts.jobs, [&](Index k) {
      values(k) = single_particle_mhr(ch.gen0, gen1, c0, omega(k), epsilon);
    });
  }

  SweepResult out;
  out.columns = {"omega", "mhr"};
  out.header_lines = provenance_header("mhr", cfg, opts, epsilon);
  for (Index k = 0; k < omega.size(); ++k)
    out.rows.push_back({omega(k), values(k)});
  return out;
}

SweepResult run_gap_scaling(const json& cfg, const RunOptions& opts) {
  const ParsedModel model = parse_model(cfg);
  if (!std::holds_alternative<ChainModel>(model))
    throw ConfigError("gap-scaling requires an xy_chain model");
  const auto& ch = std::get<ChainModel>(model);

  const json& grid = grid_section(cfg);
  const json& sizes_json = require(grid, "sizes", "grid");
  const json& fields_json = require(grid, "fields", "grid");
  std::vector<Index> sizes;
  for (const auto& s : sizes_json) sizes.push_back(s.get<Index>());
  std::vector<double> fields;
  for (const auto& f : fields_json) fields.push_back(f.get<double>());
  if (sizes.size() < 2)
    throw ConfigError("grid.sizes: gap scaling needs at least 2 sizes");
  if (fields.empty()) throw ConfigError("grid.fields: empty");

  const Index total = static_cast<Index>(sizes.size() * fields.size());
  std::vector<double> gaps(total);
  parallel_for(total, opts.jobs, [&](Index k) {
    const Index si = k % static_cast<Index>(sizes.size());
    const Index fi = k / static_cast<Index>(sizes.size());
    const auto gen =
        build_xy_chain(sizes[si], ch.gamma, fields[fi], ch.rates);
    gaps[k] = liouvillian_gap(gen);
  });

  SweepResult out;
  out.columns = {"N", "h", "gap"};
  out.header_lines = provenance_header("gap-scaling", cfg, opts, 0.0);
  for (size_t fi = 0; fi < fields.size(); ++fi) {
    if (sizes.size() >= 3) {
      // least-squares slope of log(gap) vs log(N)
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (size_t si = 0; si < sizes.size(); ++si) {
        const double x = std::log(double(sizes[si]));
        const double y =
            std::log(gaps[fi * sizes.size() + si]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double n = double(sizes.size());
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      char line[96];
      std::snprintf(line, sizeof line, "loglog-slope h=%.17g: %.6f",
                    fields[fi], slope);
      out.header_lines.push_back(line);
    } else {
      char line[96];
      std::snprintf(line, sizeof line,
                    "warning: fewer than 3 sizes, slope omitted for h=%.17g",
                    fields[fi]);
      out.header_lines.push_back(line);
    }
  }
  for (size_t fi = 0; fi < fields.size(); ++fi)
    for (size_t si = 0; si < sizes.size(); ++si)
      out.rows.push_back({double(sizes[si]), fields[fi],
                          gaps[fi * sizes.size() + si]});
  return out;
}

SweepResult run_spectrum(const json& cfg, const RunOptions& opts) {
  const ParsedModel model = parse_model(cfg);
  Vector lambda;
  if (std::holds_alternative<SmallModel>(model))
    lambda = analyze_spectrum(std::get<SmallModel>(model).l0).eigenvalues;
  else
    lambda = std::get<ChainModel>(model).gen0.x_eigenvalues;

  std::vector<Index> order(lambda.size());
  for (Index k = 0; k < lambda.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (lambda(a).real() != lambda(b).real())
      return lambda(a).real() < lambda(b).real();
    return lambda(a).imag() < lambda(b).imag();
  });

  SweepResult out;
  out.columns = {"re_lambda", "im_lambda"};
  out.header_lines = provenance_header("spectrum", cfg, opts, 0.0);
  for (const Index k : order)
    out.rows.push_back({lambda(k).real(), lambda(k).imag()});
  return out;
}

SweepResult run_correlations(const json& cfg, const RunOptions& opts) {
  const ParsedModel model = parse_model(cfg);
  if (!std::holds_alternative<ChainModel>(model))
    throw ConfigError("correlations requires an xy_chain model");
  const auto& ch = std::get<ChainModel>(model);
  const json& grid = grid_section(cfg);
  const json& c = require(grid, "correlations", "grid");
  check_keys(c, {"site", "r_max"}, "grid.correlations");
  const Index site = require_integer(c, "site", "grid.correlations");
  const Index r_max = require_integer(c, "r_max", "grid.correlations");
  if (site < 0 || site + r_max >= ch.sites)
    throw ConfigError("grid.correlations: site + r_max beyond the chain");

  const auto corr = ness_zz_correlations(ch.gen0, site, r_max);

  SweepResult out;
  out.columns = {"r", "corr"};
  out.header_lines = provenance_header("correlations", cfg, opts, 0.0);
  for (size_t r = 0; r < corr.size(); ++r)
    out.rows.push_back({double(r + 1), corr[r]});
  return out;
}

SweepResult run_power(const json& cfg, const RunOptions& opts) {
  const ParsedModel model = parse_model(cfg);
  if (!std::holds_alternative<SmallModel>(model))
    throw ConfigError("power requires a lindblad or davies_qubit model");
  const auto& sm = std::get<SmallModel>(model);
  const json& p = require(cfg, "perturbation", "config");
  if (require(p, "kind", "perturbation").get<std::string>() != "hamiltonian")
    throw ConfigError("power: the perturbation must be of hamiltonian kind");
  check_keys(p, {"kind", "operator"}, "perturbation");
  const Matrix b = parse_operator(require(p, "operator", "perturbation"),
                                  "perturbation.operator");
  double amplitude = 1.0;
  if (cfg.contains("amplitude"))
    amplitude = cfg.at("amplitude").get<double>();
  const RealVector omega = parse_axis(grid_section(cfg), "frequency", "grid");
  const double epsilon = resolve_epsilon(cfg, opts, model);

  RealVector values(omega.size());
  parallel_for(omega.size(), opts.jobs, [&](Index k) {
    values(k) =
        dissipated_power(sm.l0, b, sm.rho, omega(k), amplitude, epsilon);
  });

  SweepResult out;
  out.columns = {"omega", "power"};
  out.header_lines = provenance_header("power", cfg, opts, epsilon);
  for (Index k = 0; k < omega.size(); ++k)
    out.rows.push_back({omega(k), values(k)});
  return out;
}

}  // namespace

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  return cfg;
}

SweepResult run_subcommand(const std::string& name, const json& config,
                           const RunOptions& opts) {
  check_keys(config, kTopLevelKeys, "config");
  if (name == "chi-time") return run_chi_time(config, opts);
  if (name == "chi-freq") return run_chi_freq(config, opts);
  if (name == "mhr") return run_mhr(config, opts);
  if (name == "gap-scaling") return run_gap_scaling(config, opts);
  if (name == "spectrum") return run_spectrum(config, opts);
  if (name == "correlations") return run_correlations(config, opts);
  if (name == "power") return run_power(config, opts);
  throw ConfigError("unknown subcommand '" + name + "'");
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream out;
  for (const auto& line : result.header_lines) out << "# " << line << "\n";
  for (size_t c = 0; c < result.columns.size(); ++c)
    out << result.columns[c] << (c + 1 < result.columns.size() ? "," : "\n");
  char buf[40];
  for (const auto& row : result.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out << buf << (c + 1 < row.size() ? "," : "\n");
    }
  }
  return out.str();
}

void write_csv_file(const SweepResult& result, const std::string& path) {
  const std::string body = to_csv(result);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << body;
}

}  // namespace qlr::cli

#include "opdyn/experiment.hpp"

#include <charconv>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "opdyn/error.hpp"
#include "opdyn/fixture.hpp"

namespace opdyn {

namespace fs = std::filesystem;

namespace {

void check_unit_open(double v, const std::string& field) {
  if (!(v > 0.0 && v < 1.0)) {
    throw ParameterError(field + " = " + format_double(v) +
                         " must lie strictly inside (0, 1)");
  }
}

void check_unit_closed(double v, const std::string& field) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ParameterError(field + " = " + format_double(v) +
                         " must lie in [0, 1]");
  }
}

double unit_draw(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> read_number_list(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    std::vector<double> out;
    for (const auto& v : j) {
      if (!v.is_number()) throw InputError(field + ": expected numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  throw InputError(field + ": expected a number or a list of numbers");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

RunReport run_point(const RunConfig& point, const ResolvedInputs& inputs,
                    RunMode mode) {
  const TrustGraph& g = inputs.graph;
  RunReport report{to_json(point),
                   AgentParams{point.alpha, point.f.front(), point.r},
                   inputs.x0,
                   {},
                   {},
                   std::nullopt,
                   point.eps_time,
                   std::nullopt,
                   {}};
  report.weights = build_weight_model(g, report.params);
  report.pressure = build_pressure_matrix(report.weights, report.params.f);

  const OpinionState x0{inputs.x0, 0};
  report.consensus = predict(g, report.params, report.weights, x0);

  if (mode == RunMode::Simulate) {
    report.trajectory = simulate(
        x0, report.pressure,
        SimulationOptions{point.max_steps, point.eps_consensus, point.stride});
    if (point.eps_time)
      report.timing_convergence_time =
          first_time_below(*report.trajectory, *point.eps_time);
    if (report.trajectory->converged && report.consensus.predicted_value)
      verify(report.consensus, *report.trajectory);
  }
  return report;
}

// Concrete single-point config: inline graph, explicit vectors, one f.
RunConfig make_point(const RunConfig& base, const ResolvedInputs& inputs,
                     std::vector<double> alpha, double f) {
  RunConfig point = base;
  point.network_path.reset();
  point.edges.clear();
  for (const Edge& e : inputs.graph.edges())
    point.edges.emplace_back(e.from + 1, e.to + 1);
  point.n = inputs.graph.size();
  point.alpha = std::move(alpha);
  point.alpha_random = false;
  point.x0 = inputs.x0;
  point.x0_random = false;
  point.f = {f};
  point.alpha_sweep.clear();
  point.output_dir.clear();
  return point;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string pressure_matrix_filename(double f) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, f);
  return "B_f" + std::string(buf, res.ptr) + ".csv";
}

void validate(const RunConfig& c) {
  if (c.network_path.has_value() == !c.edges.empty()) {
    throw ParameterError(
        "network: supply exactly one of a network file or an inline edge list");
  }
  if (c.f.empty()) throw ParameterError("f: at least one value required");
  for (double f : c.f) check_unit_closed(f, "f");
  for (double a : c.alpha) check_unit_open(a, "alpha");
  for (double a : c.alpha_sweep) check_unit_open(a, "alpha_sweep");
  for (double x : c.x0) check_unit_closed(x, "x0");
  if (!(c.r > 0.0 && c.r <= 1.0)) {
    throw ParameterError("r = " + format_double(c.r) + " must lie in (0, 1]");
  }
  if (!(c.eps_consensus > 0.0)) throw ParameterError("eps must be > 0");
  if (c.eps_time && !(*c.eps_time > 0.0))
    throw ParameterError("eps_time must be > 0");
  if (c.max_steps < 1) throw ParameterError("max_steps must be >= 1");
  if (c.stride < 1) throw ParameterError("stride must be >= 1");
  if ((c.alpha_random || c.x0_random) && !c.seed) {
    throw ParameterError("seed: required when alpha or x0 is random");
  }
  if (c.alpha.empty() && !c.alpha_random && c.alpha_sweep.empty()) {
    throw ParameterError("alpha: required");
  }
  if (c.x0.empty() && !c.x0_random) throw ParameterError("x0: required");
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  RunConfig c;
  try {
    if (j.contains("network")) c.network_path = j.at("network").get<std::string>();
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
          throw InputError("edges: each edge must be a pair [i, j]");
        }
        c.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
      }
    }
    if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
    if (j.contains("alpha")) {
      const auto& a = j.at("alpha");
      if (a.is_string() && a.get<std::string>() == "random")
        c.alpha_random = true;
      else
        c.alpha = read_number_list(a, "alpha");
    }
    if (j.contains("x0")) {
      const auto& x = j.at("x0");
      if (x.is_string() && x.get<std::string>() == "random")
        c.x0_random = true;
      else
        c.x0 = read_number_list(x, "x0");
    }
    if (j.contains("f")) c.f = read_number_list(j.at("f"), "f");
    if (j.contains("alpha_sweep"))
      c.alpha_sweep = read_number_list(j.at("alpha_sweep"), "alpha_sweep");
    if (j.contains("r")) c.r = j.at("r").get<double>();
    if (j.contains("eps")) c.eps_consensus = j.at("eps").get<double>();
    if (j.contains("eps_time")) c.eps_time = j.at("eps_time").get<double>();
    if (j.contains("max_steps")) c.max_steps = j.at("max_steps").get<std::size_t>();
    if (j.contains("stride")) c.stride = j.at("stride").get<std::size_t>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("config '" + path.string() + "': " + e.what());
  }
  RunConfig c = config_from_json(j);
  if (c.network_path && fs::path(*c.network_path).is_relative())
    c.network_path = (path.parent_path() / *c.network_path).string();
  return c;
}

json to_json(const RunConfig& c) {
  json j = json::object();
  if (c.network_path) j["network"] = *c.network_path;
  if (!c.edges.empty()) {
    json edges = json::array();
    for (auto [from, to] : c.edges) edges.push_back({from, to});
    j["edges"] = std::move(edges);
  }
  if (c.n) j["n"] = *c.n;
  if (c.alpha_random)
    j["alpha"] = "random";
  else if (!c.alpha.empty())
    j["alpha"] = c.alpha;
  if (c.x0_random)
    j["x0"] = "random";
  else
    j["x0"] = c.x0;
  j["f"] = c.f.size() == 1 ? json(c.f.front()) : json(c.f);
  if (!c.alpha_sweep.empty()) j["alpha_sweep"] = c.alpha_sweep;
  j["r"] = c.r;
  j["eps"] = c.eps_consensus;
  if (c.eps_time) j["eps_time"] = *c.eps_time;
  j["max_steps"] = c.max_steps;
  j["stride"] = c.stride;
  if (!c.output_dir.empty()) j["output_dir"] = c.output_dir;
  if (c.seed) j["seed"] = *c.seed;
  return j;
}

ResolvedInputs resolve(const RunConfig& c) {
  validate(c);
  TrustGraph g = c.network_path ? read_edge_list(*c.network_path, c.n)
                                : graph_from_one_based(c.edges, c.n);
  const std::size_t n = g.size();
  std::mt19937_64 gen(c.seed.value_or(0));

  std::vector<double> alpha;
  if (c.alpha_random) {
    for (std::size_t i = 0; i < n; ++i) alpha.push_back(unit_draw(gen));
  } else if (c.alpha.size() == 1) {
    alpha.assign(n, c.alpha.front());
  } else if (c.alpha.empty()) {
    alpha.assign(n, c.alpha_sweep.front());
  } else if (c.alpha.size() == n) {
    alpha = c.alpha;
  } else {
    throw ParameterError("alpha: expected 1 or " + std::to_string(n) +
                         " values, got " + std::to_string(c.alpha.size()));
  }

  std::vector<double> x0;
  if (c.x0_random) {
    for (std::size_t i = 0; i < n; ++i) x0.push_back(unit_draw(gen));
  } else if (c.x0.size() == n) {
    x0 = c.x0;
  } else {
    throw ParameterError("x0: expected " + std::to_string(n) +
                         " values, got " + std::to_string(c.x0.size()));
  }
  return {std::move(g), std::move(alpha), std::move(x0)};
}

std::optional<std::size_t> comparison_time(const RunReport& report) {
  if (report.timing_eps) return report.timing_convergence_time;
  if (report.trajectory) return report.trajectory->convergence_time;
  return std::nullopt;
}

RunReport run(const RunConfig& config, RunMode mode) {
  if (config.f.size() != 1 || !config.alpha_sweep.empty()) {
    throw ParameterError("f: run takes a single parameter point; use sweep");
  }
  const ResolvedInputs inputs = resolve(config);
  RunReport report = run_point(make_point(config, inputs, inputs.alpha,
                                          config.f.front()),
                               inputs, mode);
  if (!config.output_dir.empty()) write_run(report, config.output_dir);
  return report;
}

std::vector<RunReport> sweep(const RunConfig& config, RunMode mode) {
  const ResolvedInputs inputs = resolve(config);
  std::vector<std::vector<double>> alphas;
  if (config.alpha_sweep.empty()) {
    alphas.push_back(inputs.alpha);
  } else {
    for (double a : config.alpha_sweep)
      alphas.emplace_back(inputs.graph.size(), a);
  }

  std::vector<std::future<RunReport>> pending;
  for (const auto& alpha : alphas) {
    for (double f : config.f) {
      pending.push_back(std::async(std::launch::async, [&, alpha, f] {
        return run_point(make_point(config, inputs, alpha, f), inputs, mode);
      }));
    }
  }
  std::vector<RunReport> reports;
  reports.reserve(pending.size());
  for (auto& p : pending) reports.push_back(p.get());

  if (!config.output_dir.empty()) {
    const fs::path dir(config.output_dir);
    for (std::size_t k = 0; k < reports.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "point_%03zu", k);
      write_run(reports[k], dir / name);
    }
    write_sweep_summary(dir / "sweep_summary.csv", reports);
    std::ofstream cfg = open_output(dir / "config.json");
    cfg << to_json(config).dump(2) << '\n';
  }
  return reports;
}

void write_matrix_csv(const fs::path& path, const Matrix& m) {
  std::ofstream out = open_output(path);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_trajectory_csv(const fs::path& path, const Trajectory& traj) {
  std::ofstream out = open_output(path);
  const std::size_t n =
      traj.states.empty() ? 0 : traj.states.front().opinions.size();
  out << 't';
  for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
  out << '\n';
  for (const auto& st : traj.states) {
    out << st.time;
    for (double v : st.opinions) out << ',' << format_double(v);
    out << '\n';
  }
}

json report_to_json(const RunReport& r) {
  const auto& c = r.consensus;
  std::vector<std::size_t> celebrities;
  for (AgentId i : c.celebrity_set) celebrities.push_back(i + 1);

  json consensus = {
      {"regime", std::string(to_string(c.regime))},
      {"predicted_value", optional_to_json(c.predicted_value)},
      {"weights", c.weights},
      {"positive_column_time", optional_to_json(c.positive_column_time)},
      {"stationary_residual", optional_to_json(c.stationary_residual)},
      {"simulated_value", optional_to_json(c.simulated_value)},
      {"agreement", optional_to_json(c.agreement)},
      {"max_deviation", optional_to_json(c.max_deviation)},
  };
  if (c.regime == Regime::NoPressure) consensus["celebrity_set"] = celebrities;

  json trajectory = nullptr;
  if (r.trajectory) {
    const auto& t = *r.trajectory;
    trajectory = {
        {"converged", t.converged},
        {"convergence_time", optional_to_json(t.convergence_time)},
        {"steps", t.final_state().time},
        {"final_value", average_opinion(t.final_state())},
        {"final_spread", t.final_spread},
    };
    if (r.timing_eps) {
      trajectory["timing"] = {
          {"eps", *r.timing_eps},
          {"convergence_time", optional_to_json(r.timing_convergence_time)}};
    }
  }

  const auto& prof = r.weights.profile;
  return {
      {"config", r.config_echo},
      {"generator", kGeneratorDescription},
      {"n", r.x0.size()},
      {"f", r.params.f},
      {"r", r.params.r},
      {"alpha", r.params.alpha},
      {"x0", r.x0},
      {"influence",
       {{"inf", prof.inf},
        {"beta", prof.beta},
        {"gamma", prof.gamma},
        {"con", prof.con},
        {"total_inf", prof.total_inf}}},
      {"matrices",
       {{"W", matrix_to_json(r.weights.one_step)},
        {"Wprime", matrix_to_json(r.weights.two_step)},
        {"B", matrix_to_json(r.pressure.b)}}},
      {"consensus", std::move(consensus)},
      {"trajectory", std::move(trajectory)},
  };
}

void write_run(const RunReport& report, const fs::path& dir) {
  fs::create_directories(dir);
  write_matrix_csv(dir / "W.csv", report.weights.one_step);
  write_matrix_csv(dir / "Wprime.csv", report.weights.two_step);
  write_matrix_csv(dir / pressure_matrix_filename(report.params.f),
                   report.pressure.b);
  if (report.trajectory)
    write_trajectory_csv(dir / "trajectory.csv", *report.trajectory);
  open_output(dir / "report.json") << report_to_json(report).dump(2) << '\n';
  open_output(dir / "config.json") << report.config_echo.dump(2) << '\n';
}

void write_sweep_summary(const fs::path& path,
                         const std::vector<RunReport>& reports) {
  std::ofstream out = open_output(path);
  out << "index,f,alpha,eps,convergence_time,converged,consensus_value,"
         "predicted_value,agreement\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    const auto& a = r.params.alpha;
    const bool uniform =
        std::all_of(a.begin(), a.end(), [&](double v) { return v == a.front(); });
    const auto time = comparison_time(r);
    const double eps =
        r.timing_eps.value_or(r.config_echo.at("eps").get<double>());
    out << k << ',' << format_double(r.params.f) << ','
        << (uniform ? format_double(a.front()) : std::string("mixed")) << ','
        << format_double(eps) << ',' << (time ? std::to_string(*time) : "")
        << ',';
    if (r.trajectory) {
      out << (r.trajectory->converged ? "true" : "false") << ','
          << format_double(average_opinion(r.trajectory->final_state()));
    } else {
      out << ',';
    }
    out << ','
        << (r.consensus.predicted_value
                ? format_double(*r.consensus.predicted_value)
                : "")
        << ','
        << (r.consensus.agreement ? format_double(*r.consensus.agreement) : "")
        << '\n';
  }
}

PaperReproduction reproduce_paper(const std::string& output_dir) {
  RunConfig base;
  base.edges = fixture::kEdges;
  base.n = fixture::kAgents;
  base.alpha = fixture::kAlpha;
  base.x0 = fixture::kX0;
  base.r = fixture::kR;
  base.eps_time = fixture::kTimingEps;

  const auto subdir = [&](const char* name) {
    return output_dir.empty() ? std::string() : (fs::path(output_dir) / name).string();
  };

  PaperReproduction out;
  RunConfig cfg = base;
  cfg.f = {fixture::kBaselineF};
  cfg.output_dir = subdir("baseline");
  out.baseline = run(cfg);

  cfg.f = {0.0, fixture::kBaselineF};
  cfg.output_dir = subdir("pressure_vs_none");
  out.pressure_vs_none = sweep(cfg);

  cfg.f = fixture::kGroupPressureSweep;
  cfg.output_dir = subdir("pressure_sweep");
  out.pressure_sweep = sweep(cfg);

  cfg.f = {fixture::kSelfConfidenceF};
  cfg.alpha_sweep = fixture::kSelfConfidenceSweep;
  cfg.output_dir = subdir("confidence_sweep");
  out.confidence_sweep = sweep(cfg);

  const auto compare = [](std::string name, Matrix printed, Matrix computed) {
    MatrixComparison mc{std::move(name), std::move(printed), std::move(computed), 0.0};
    for (std::size_t i = 0; i < mc.printed.rows(); ++i)
      for (std::size_t j = 0; j < mc.printed.cols(); ++j)
        mc.max_delta = std::max(mc.max_delta,
                                std::abs(mc.printed(i, j) - mc.computed(i, j)));
    return mc;
  };
  out.comparisons.push_back(
      compare("W", fixture::printed_w(), out.baseline.weights.one_step));
  out.comparisons.push_back(compare("Wprime", fixture::printed_w_prime(),
                                    out.baseline.weights.two_step));
  out.comparisons.push_back(
      compare("B", fixture::printed_b(), out.baseline.pressure.b));

  if (!output_dir.empty()) {
    const fs::path dir(output_dir);
    std::ofstream csv = open_output(dir / "matrix_comparison.csv");
    csv << "matrix,i,j,printed,computed,delta\n";
    json summary = {{"tolerance", fixture::kPrintedTolerance},
                    {"matrices", json::object()}};
    for (const auto& mc : out.comparisons) {
      for (std::size_t i = 0; i < mc.printed.rows(); ++i)
        for (std::size_t j = 0; j < mc.printed.cols(); ++j)
          csv << mc.name << ',' << i + 1 << ',' << j + 1 << ','
              << format_double(mc.printed(i, j)) << ','
              << format_double(mc.computed(i, j)) << ','
              << format_double(mc.computed(i, j) - mc.printed(i, j)) << '\n';
      summary["matrices"][mc.name] = {
          {"max_delta", mc.max_delta},
          {"within_tolerance", mc.max_delta <= fixture::kPrintedTolerance}};
    }
    const auto times = [](const std::vector<RunReport>& rs) {
      json arr = json::array();
      for (const auto& r : rs)
        arr.push_back({{"f", r.params.f},
                       {"alpha", r.params.alpha},
                       {"convergence_time", optional_to_json(comparison_time(r))},
                       {"predicted_value",
                        optional_to_json(r.consensus.predicted_value)},
                       {"agreement", optional_to_json(r.consensus.agreement)}});
      return arr;
    };
    summary["timing_eps"] = fixture::kTimingEps;
    summary["pressure_vs_none"] = times(out.pressure_vs_none);
    summary["pressure_sweep"] = times(out.pressure_sweep);
    summary["confidence_sweep"] = times(out.confidence_sweep);
    open_output(dir / "reproduction.json") << summary.dump(2) << '\n';
  }
  return out;
}

}  // namespace opdyn

// Command-line front end: simulate, analyze, sweep, reproduce-paper.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "opdyn/error.hpp"
#include "opdyn/experiment.hpp"
#include "opdyn/fixture.hpp"

namespace {

using namespace opdyn;

struct Flags {
  std::string config;
  std::string network;
  std::string edges;
  std::optional<std::size_t> n;
  std::string alpha;
  std::string x0;
  std::string f;
  std::string alpha_sweep;
  std::optional<double> r;
  std::optional<double> eps;
  std::optional<double> eps_time;
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> stride;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
};

std::vector<double> parse_list(const std::string& text, const char* field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos)
        throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParameterError(std::string(field) + ": cannot parse '" + item + "'");
    }
  }
  return out;
}

// "1-2,1-4,2-1" -> 1-based pairs.
std::vector<std::pair<std::size_t, std::size_t>> parse_edges(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t from = 0, to = 0;
    char dash = 0;
    std::istringstream in(item);
    if (!(in >> from >> dash >> to) || dash != '-') {
      throw ParameterError("edges: cannot parse '" + item + "' (expected i-j)");
    }
    out.emplace_back(from, to);
  }
  return out;
}

RunConfig build_config(const Flags& fl) {
  RunConfig c = fl.config.empty() ? RunConfig{} : load_config(fl.config);
  if (!fl.network.empty()) {
    c.network_path = fl.network;
    c.edges.clear();
  }
  if (!fl.edges.empty()) {
    c.edges = parse_edges(fl.edges);
    c.network_path.reset();
  }
  if (fl.n) c.n = fl.n;
  if (!fl.alpha.empty()) {
    c.alpha_random = fl.alpha == "random";
    c.alpha = c.alpha_random ? std::vector<double>{} : parse_list(fl.alpha, "alpha");
  }
  if (!fl.x0.empty()) {
    c.x0_random = fl.x0 == "random";
    c.x0 = c.x0_random ? std::vector<double>{} : parse_list(fl.x0, "x0");
  }
  if (!fl.f.empty()) c.f = parse_list(fl.f, "f");
  if (!fl.alpha_sweep.empty()) c.alpha_sweep = parse_list(fl.alpha_sweep, "alpha_sweep");
  if (fl.r) c.r = *fl.r;
  if (fl.eps) c.eps_consensus = *fl.eps;
  if (fl.eps_time) c.eps_time = fl.eps_time;
  if (fl.max_steps) c.max_steps = *fl.max_steps;
  if (fl.stride) c.stride = *fl.stride;
  if (!fl.output_dir.empty()) c.output_dir = fl.output_dir;
  if (fl.seed) c.seed = fl.seed;
  return c;
}

void add_run_flags(CLI::App* cmd, Flags& fl) {
  cmd->add_option("--config", fl.config, "JSON config file; flags override it");
  cmd->add_option("--network", fl.network, "edge-list file (1-based 'i j' per line)");
  cmd->add_option("--edges", fl.edges, "inline edge list, e.g. 1-2,2-1");
  cmd->add_option("--n", fl.n, "agent count (default: largest id)");
  cmd->add_option("--alpha", fl.alpha, "self-confidence: scalar, list, or 'random'");
  cmd->add_option("--x0", fl.x0, "initial opinions: list or 'random'");
  cmd->add_option("--f", fl.f, "group pressure: scalar or list");
  cmd->add_option("--alpha-sweep", fl.alpha_sweep, "uniform self-confidence values to sweep");
  cmd->add_option("--r", fl.r, "two-step appetite in (0, 1]");
  cmd->add_option("--eps", fl.eps, "consensus threshold on the spread");
  cmd->add_option("--eps-time", fl.eps_time, "extra threshold for timing comparisons");
  cmd->add_option("--max-steps", fl.max_steps, "simulation step cap");
  cmd->add_option("--stride", fl.stride, "record every k-th state");
  cmd->add_option("--output-dir", fl.output_dir, "directory for exports");
  cmd->add_option("--seed", fl.seed, "seed for random alpha / x0");
}

std::string opt_str(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : "-";
}
std::string short_num(double v, int digits = 10) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}
std::string opt_str(const std::optional<double>& v) {
  return v ? short_num(*v) : "-";
}

void print_run(const RunReport& r) {
  const auto& c = r.consensus;
  std::cout << "regime            " << to_string(c.regime) << '\n'
            << "predicted value   " << opt_str(c.predicted_value) << '\n';
  if (r.trajectory) {
    std::cout << "converged         " << (r.trajectory->converged ? "yes" : "no")
              << '\n'
              << "convergence time  " << opt_str(r.trajectory->convergence_time)
              << '\n';
    if (r.timing_eps)
      std::cout << "time at eps " << short_num(*r.timing_eps) << "  "
                << opt_str(r.timing_convergence_time) << '\n';
    std::cout << "simulated value   " << opt_str(c.simulated_value) << '\n'
              << "agreement         " << opt_str(c.agreement) << '\n';
  }
}

void print_sweep(const std::vector<RunReport>& reports) {
  std::printf("%-6s %-10s %-10s %-10s %-22s %s\n", "index", "f", "alpha",
              "time", "value", "agreement");
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    std::printf("%-6zu %-10s %-10s %-10s %-22s %s\n", k,
                short_num(r.params.f, 6).c_str(),
                short_num(r.params.alpha.front(), 6).c_str(),
                opt_str(comparison_time(r)).c_str(),
                opt_str(r.consensus.simulated_value ? r.consensus.simulated_value
                                                    : r.consensus.predicted_value)
                    .c_str(),
                opt_str(r.consensus.agreement).c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opinion dynamics with two-step communication and group pressure"};
  app.require_subcommand(1);

  Flags flags;
  auto* simulate_cmd = app.add_subcommand("simulate", "simulate one parameter point");
  auto* analyze_cmd = app.add_subcommand("analyze", "predict consensus without simulating");
  auto* sweep_cmd = app.add_subcommand("sweep", "run one point per f / alpha_sweep value");
  auto* paper_cmd = app.add_subcommand("reproduce-paper",
                                       "run the built-in six-agent reference experiments");
  for (auto* cmd : {simulate_cmd, analyze_cmd, sweep_cmd}) add_run_flags(cmd, flags);
  paper_cmd->add_option("--output-dir", flags.output_dir, "directory for exports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*paper_cmd) {
      const auto rep = reproduce_paper(flags.output_dir);
      for (const auto& mc : rep.comparisons)
        std::printf("%-7s max |delta| = %.3g (tolerance %.0e)\n", mc.name.c_str(),
                    mc.max_delta, fixture::kPrintedTolerance);
      std::cout << "\nbaseline f = 0.5\n";
      print_run(rep.baseline);
      std::cout << "\nwith vs without group pressure\n";
      print_sweep(rep.pressure_vs_none);
      std::cout << "\ngroup pressure sweep\n";
      print_sweep(rep.pressure_sweep);
      std::cout << "\nself-confidence sweep (f = 0.3)\n";
      print_sweep(rep.confidence_sweep);
      return 0;
    }

    const RunConfig config = build_config(flags);
    if (*sweep_cmd) {
      print_sweep(sweep(config));
    } else {
      print_run(run(config, *analyze_cmd ? RunMode::Analyze : RunMode::Simulate));
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

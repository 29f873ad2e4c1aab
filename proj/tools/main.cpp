#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kerrtap/protocol.hpp"
#include "kerrtap/report.hpp"
#include "kerrtap/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

constexpr double kPi = std::numbers::pi;

double to_radians(double degrees) { return degrees * kPi / 180.0; }

// "lo:hi:step" (inclusive endpoints, positive step) or a single value.
std::vector<double> parse_range(const std::string& spec) {
  std::vector<std::string> parts;
  std::string token;
  for (char ch : spec) {
    if (ch == ':') {
      parts.push_back(token);
      token.clear();
    } else {
      token += ch;
    }
  }
  parts.push_back(token);

  const auto to_double = [&](const std::string& s) {
    std::size_t consumed = 0;
    const double v = std::stod(s, &consumed);
    if (consumed != s.size()) {
      throw std::invalid_argument("malformed range '" + spec + "'");
    }
    return v;
  };

  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 3) {
    throw std::invalid_argument("malformed range '" + spec +
                                "' (want value or lo:hi:step)");
  }
  const double lo = to_double(parts[0]);
  const double hi = to_double(parts[1]);
  const double step = to_double(parts[2]);
  if (!(step > 0.0) || hi < lo) {
    throw std::invalid_argument("malformed range '" + spec +
                                "' (need step > 0 and hi >= lo)");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(lo + i * step);
  return values;
}

struct AnalyzeArgs {
  double theta = 0.0;
  double phi = kPi;
  double alpha = 1.0;
  bool json = false;
  bool degrees = false;
};

struct SweepArgs {
  std::string theta_spec;
  std::string phi_spec;
  std::string alpha_spec;
  bool degrees = false;
};

struct SimulateArgs {
  kerrtap::SimConfig config;
  std::string dump_path;
  bool degrees = false;
};

struct ThresholdArgs {
  double theta = 0.0;
  double phi = kPi;
  bool json = false;
  bool degrees = false;
};

int run_analyze(const AnalyzeArgs& args) {
  const double theta = args.degrees ? to_radians(args.theta) : args.theta;
  const double phi = args.degrees ? to_radians(args.phi) : args.phi;
  const kerrtap::OutputRow row = kerrtap::evaluate_point(theta, phi, args.alpha);
  if (args.json) {
    std::cout << kerrtap::to_json(row) << '\n';
  } else {
    std::cout << kerrtap::to_text(row);
  }
  return kExitOk;
}

int run_sweep(const SweepArgs& args) {
  auto thetas = parse_range(args.theta_spec);
  auto phis = parse_range(args.phi_spec);
  const auto alphas = parse_range(args.alpha_spec);
  if (args.degrees) {
    for (double& t : thetas) t = to_radians(t);
    for (double& p : phis) p = to_radians(p);
  }
  std::cout << kerrtap::csv_header() << '\n';
  for (double theta : thetas) {
    for (double phi : phis) {
      for (double alpha : alphas) {
        std::cout << kerrtap::to_csv(kerrtap::evaluate_point(theta, phi, alpha))
                  << '\n';
      }
    }
  }
  return kExitOk;
}

int run_simulate(const SimulateArgs& args, bool phi_given, bool frame_given) {
  kerrtap::SimConfig config = args.config;
  if (args.degrees) {
    if (phi_given) config.phi = to_radians(config.phi);
    if (frame_given) config.eve_frame_angle = to_radians(config.eve_frame_angle);
  }
  const kerrtap::RunResult result = kerrtap::run_bb84(config);
  if (!args.dump_path.empty()) {
    std::ofstream out(args.dump_path);
    if (!out) {
      std::cerr << "error: cannot open '" << args.dump_path << "' for writing\n";
      return kExitIo;
    }
    kerrtap::write_records(out, result.records);
    out.flush();
    if (!out) {
      std::cerr << "error: failed writing '" << args.dump_path << "'\n";
      return kExitIo;
    }
  }
  std::cout << kerrtap::to_json(result.stats) << '\n';
  return kExitOk;
}

int run_threshold(const ThresholdArgs& args) {
  const double theta = args.degrees ? to_radians(args.theta) : args.theta;
  const double phi = args.degrees ? to_radians(args.phi) : args.phi;
  const auto alpha_star = kerrtap::threshold_alpha(theta, phi);
  if (!alpha_star) {
    if (args.json) {
      std::cout << "{\"alpha_star\":null}\n";
    } else {
      std::cout << "no threshold: i_ab > min(i_ae, i_eb) for all alpha in (0, 1]\n";
    }
    return kExitOk;
  }
  const kerrtap::ChannelMetrics m =
      kerrtap::channel_metrics(theta, phi, *alpha_star);
  if (args.json) {
    std::cout << "{\"alpha_star\":" << kerrtap::format_double(*alpha_star)
              << ",\"q_ab\":" << kerrtap::format_double(m.q_ab)
              << ",\"i_ab\":" << kerrtap::format_double(m.i_ab)
              << ",\"i_ae\":" << kerrtap::format_double(m.i_ae) << "}\n";
  } else {
    std::cout << "alpha*        = " << kerrtap::format_double(*alpha_star)
              << "\nq_ab(alpha*)  = " << kerrtap::format_double(m.q_ab)
              << "\ni_ab(alpha*)  = " << kerrtap::format_double(m.i_ab)
              << "\ni_ae(alpha*)  = " << kerrtap::format_double(m.i_ae) << '\n';
  }
  return kExitOk;
}

int run_verify(int grid_n) {
  const auto results = kerrtap::run_verification(grid_n);
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.name;
    for (std::size_t i = r.name.size(); i < 28; ++i) std::cout << ' ';
    std::cout << r.detail << '\n';
  }
  const bool ok = kerrtap::all_passed(results);
  std::cout << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translucent eavesdropping on a BB84 channel: closed-form "
               "detection probabilities, mutual information, security "
               "threshold and Monte Carlo protocol simulation for a "
               "Kerr-cell Mach-Zehnder probe."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "read options from a file (key = value, flag names as keys; "
                 "command-line flags take precedence)");

  AnalyzeArgs analyze_args;
  CLI::App* analyze =
      app.add_subcommand("analyze", "evaluate one (theta, phi, alpha) point");
  analyze->add_option("--theta", analyze_args.theta,
                      "state angle in Eve's frame, radians (default 0)");
  analyze->add_option("--phi", analyze_args.phi,
                      "Kerr phase, radians (default pi)");
  analyze
      ->add_option("--alpha", analyze_args.alpha,
                   "intercept fraction in [0, 1] (default 1)")
      ->check(CLI::Range(0.0, 1.0));
  analyze->add_flag("--json", analyze_args.json, "emit a JSON object");
  analyze->add_flag("--degrees", analyze_args.degrees,
                    "interpret --theta/--phi in degrees");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "CSV over a parameter grid (theta outer, phi, alpha inner)");
  sweep->add_option("--theta", sweep_args.theta_spec,
                    "value or lo:hi:step (radians)")
      ->required();
  sweep->add_option("--phi", sweep_args.phi_spec, "value or lo:hi:step (radians)")
      ->required();
  sweep->add_option("--alpha", sweep_args.alpha_spec, "value or lo:hi:step")
      ->required();
  sweep->add_flag("--degrees", sweep_args.degrees,
                  "interpret theta/phi specs in degrees");

  SimulateArgs sim_args;
  CLI::App* simulate =
      app.add_subcommand("simulate", "seeded Monte Carlo BB84 run, JSON stats");
  simulate->add_option("--n", sim_args.config.n_pulses, "number of pulses")
      ->required();
  simulate
      ->add_option("--alpha", sim_args.config.alpha,
                   "intercept fraction (default 0)")
      ->check(CLI::Range(0.0, 1.0));
  CLI::Option* phi_opt = simulate->add_option(
      "--phi", sim_args.config.phi, "Kerr phase, radians (default pi)");
  CLI::Option* frame_opt = simulate->add_option(
      "--eve-frame", sim_args.config.eve_frame_angle,
      "Eve's basis orientation, radians (default pi/8)");
  simulate->add_option("--seed", sim_args.config.seed, "RNG seed (default 0)");
  simulate
      ->add_option("--flip-rate", sim_args.config.channel_flip_rate,
                   "background flip probability on untouched pulses (default 0)")
      ->check(CLI::Range(0.0, 1.0));
  simulate
      ->add_option("--sample-fraction", sim_args.config.sample_fraction,
                   "sifted fraction disclosed for QBER estimation (default 0.5)")
      ->check(CLI::Range(0.0, 1.0));
  simulate
      ->add_option("--chunks", sim_args.config.n_chunks,
                   "chunk plan; any value reproduces the same output "
                   "(default 4)")
      ->check(CLI::Range(1u, 1024u));
  simulate->add_option("--dump", sim_args.dump_path,
                       "write the per-pulse record CSV to this path");
  simulate->add_flag("--degrees", sim_args.degrees,
                     "interpret --phi/--eve-frame in degrees");

  ThresholdArgs threshold_args;
  CLI::App* threshold = app.add_subcommand(
      "threshold", "smallest unsafe intercept fraction at (theta, phi)");
  threshold->add_option("--theta", threshold_args.theta,
                        "state angle in Eve's frame, radians (default 0)");
  threshold->add_option("--phi", threshold_args.phi,
                        "Kerr phase, radians (default pi)");
  threshold->add_flag("--json", threshold_args.json, "emit a JSON object");
  threshold->add_flag("--degrees", threshold_args.degrees,
                      "interpret --theta/--phi in degrees");

  int grid_n = 101;
  CLI::App* verify = app.add_subcommand(
      "verify", "closed-form vs circuit oracle plus reference regressions");
  verify->add_option("--grid", grid_n, "grid points per axis (default 101)")
      ->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(analyze_args);
    if (*sweep) return run_sweep(sweep_args);
    if (*simulate)
      return run_simulate(sim_args, phi_opt->count() > 0,
                          frame_opt->count() > 0);
    if (*threshold) return run_threshold(threshold_args);
    if (*verify) return run_verify(grid_n);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

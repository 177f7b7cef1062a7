// hamming-boot: bootstrap percolation on Hamming tori from the command line.
//
// Subcommands: simulate, sweep, limits, exponents, detect, oracle.
// Exit codes: 0 success, 1 domain/usage error, 2 resource error.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hamming_boot/analytics.hpp"
#include "hamming_boot/detectors.hpp"
#include "hamming_boot/dynamics.hpp"
#include "hamming_boot/io.hpp"
#include "hamming_boot/montecarlo.hpp"

namespace hb = hamming_boot;

namespace {

struct ThetaRange {
  int lo = 0, hi = 0;
};

// "3" or "2..12"
ThetaRange parse_theta_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw hb::DomainError("bad theta range '" + text + "' (use N or LO..HI)");
  }
}

// "lo:step:hi" inclusive grid
std::vector<double> parse_grid(const std::string& text) {
  double lo, step, hi;
  char c1, c2;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' ||
      step <= 0)
    throw hb::DomainError("bad grid '" + text + "' (use lo:step:hi)");
  std::vector<double> grid;
  for (double x = lo; x <= hi + step * 1e-9; x += step) grid.push_back(x);
  return grid;
}

std::vector<hb::EventKind> parse_events(const std::vector<std::string>& names) {
  std::vector<hb::EventKind> events;
  for (const std::string& name : names) {
    const auto kind = hb::event_kind_from_name(name);
    if (!kind) throw hb::DomainError("unknown event '" + name + "'");
    events.push_back(*kind);
  }
  return events;
}

void emit(const std::string& text, const std::string& output) {
  if (output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw hb::ResourceError("cannot open " + output);
  out << text;
}

hb::Scaling scaling_from_flags(const CLI::Option* p_opt, double p, double a,
                               const std::string& alpha) {
  if (p_opt->count()) {
    if (!alpha.empty())
      throw hb::DomainError("give either --p or --a/--alpha, not both");
    return hb::Scaling::raw(p);
  }
  if (alpha.empty()) throw hb::DomainError("need --p or both --a and --alpha");
  return hb::Scaling::critical(a, hb::parse_rational(alpha));
}

int run_simulate(const hb::ExperimentSpec& spec, const std::string& output,
                 const std::string& format, int verbosity) {
  const hb::EstimateReport report = hb::run(spec);
  for (const std::string& warning : report.warnings)
    std::cerr << "warning: " << warning << "\n";
  if (verbosity > 1)
    std::cerr << "wall seconds: " << report.wall_seconds << "\n";
  std::ostringstream buffer;
  const auto rows = hb::rows_from_report(report);
  if (format == "csv")
    hb::write_rows_csv(buffer, rows);
  else
    hb::write_rows_json(buffer, rows);
  emit(buffer.str(), output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bootstrap percolation on the Hamming torus: exact dynamics, "
               "configuration detectors, closed-form limits, exponent bounds "
               "and Monte Carlo estimation"};
  app.require_subcommand(1);

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "Estimate event probabilities");
  int sim_d = 2, sim_theta = 2;
  int64_t sim_n = 16, sim_replicas = 1000;
  double sim_p = 0.0, sim_a = 1.0, sim_ci = 0.99;
  std::string sim_alpha, sim_output = "-", sim_format = "csv", sim_config;
  std::vector<std::string> sim_events{"spanned"};
  uint64_t sim_seed = 0;
  int sim_verbosity = 1;
  simulate->add_option("--d", sim_d, "dimension");
  simulate->add_option("--n", sim_n, "side length");
  simulate->add_option("--theta", sim_theta, "growth threshold");
  auto* sim_p_opt = simulate->add_option("--p", sim_p, "raw initial density");
  simulate->add_option("--a", sim_a, "scaling constant in p = a n^-alpha");
  simulate->add_option("--alpha", sim_alpha, "scaling exponent (rational or decimal)");
  simulate->add_option("--events", sim_events, "event kinds")->delimiter(',');
  simulate->add_option("--replicas", sim_replicas, "number of replicas");
  simulate->add_option("--seed", sim_seed, "rng seed");
  simulate->add_option("--ci-level", sim_ci, "confidence level");
  simulate->add_option("--output", sim_output, "output path or -");
  simulate->add_option("--format", sim_format, "csv or json");
  simulate->add_option("--config", sim_config, "JSON run config (overrides flags)");
  simulate->add_option("--verbosity", sim_verbosity, "0..2");

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid of simulate runs");
  int sw_d = 2, sw_theta = 2;
  double sw_a = 1.0;
  std::string sw_alpha, sw_output = "-", sw_config;
  std::vector<int64_t> sw_ns;
  std::vector<double> sw_as;
  std::vector<std::string> sw_alphas, sw_events{"spanned"};
  int64_t sw_replicas = 1000;
  uint64_t sw_seed = 0;
  sweep_cmd->add_option("--d", sw_d, "dimension");
  sweep_cmd->add_option("--theta", sw_theta, "growth threshold");
  sweep_cmd->add_option("--n-list", sw_ns, "side lengths")->delimiter(',');
  sweep_cmd->add_option("--a", sw_a, "fixed scaling constant");
  sweep_cmd->add_option("--alpha", sw_alpha, "fixed scaling exponent");
  sweep_cmd->add_option("--a-list", sw_as, "vary a over these values")->delimiter(',');
  sweep_cmd->add_option("--alpha-list", sw_alphas, "vary alpha")->delimiter(',');
  sweep_cmd->add_option("--events", sw_events, "event kinds")->delimiter(',');
  sweep_cmd->add_option("--replicas", sw_replicas, "replicas per point");
  sweep_cmd->add_option("--seed", sw_seed, "rng seed");
  sweep_cmd->add_option("--output", sw_output, "output path or -");
  sweep_cmd->add_option("--config", sw_config, "JSON run config (overrides flags)");

  // ---- limits ----
  auto* limits = app.add_subcommand("limits", "Closed-form limits and Poisson means");
  std::string lim_mode = "2d", lim_grid, lim_output = "-";
  int lim_theta = 3;
  double lim_a = 1.0;
  limits->add_option("--mode", lim_mode, "2d | 3d | good | means");
  limits->add_option("--theta", lim_theta, "threshold (2d mode)");
  limits->add_option("--a", lim_a, "scaling constant");
  limits->add_option("--a-grid", lim_grid, "grid lo:step:hi instead of --a");
  limits->add_option("--output", lim_output, "output path or -");

  // ---- exponents ----
  auto* exponents = app.add_subcommand("exponents", "Critical-exponent bounds");
  int exp_d = 3;
  std::string exp_theta = "2..12", exp_grid, exp_output = "-";
  bool exp_figure = false, exp_epl = false;
  exponents->add_option("--d", exp_d, "dimension");
  exponents->add_option("--theta", exp_theta, "theta or range LO..HI");
  exponents->add_flag("--figure", exp_figure, "emit plot-ready series");
  exponents->add_option("--alpha-grid", exp_grid, "alpha grid for --figure");
  exponents->add_flag("--epl", exp_epl, "emit large-theta plane-threshold bounds");
  exponents->add_option("--output", exp_output, "output path or -");

  // ---- detect ----
  auto* detect = app.add_subcommand("detect", "Run detectors on a configuration file");
  std::string det_input;
  bool det_f_lines = false;
  detect->add_option("--input", det_input, "configuration JSON")->required();
  detect->add_flag("--f-lines", det_f_lines,
                   "also count axis-1 three-step line witnesses");

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "Exact enumeration and engine checks");
  int orc_d = 2, orc_theta = 2;
  int64_t orc_n = 3, orc_mc = 100000, orc_instances = 500;
  double orc_p = 0.2;
  std::string orc_event = "spanned";
  uint64_t orc_seed = 0;
  bool orc_equivalence = false;
  oracle->add_option("--d", orc_d, "dimension");
  oracle->add_option("--n", orc_n, "side length");
  oracle->add_option("--theta", orc_theta, "growth threshold");
  oracle->add_option("--p", orc_p, "initial density");
  oracle->add_option("--event", orc_event, "event kind");
  oracle->add_option("--mc-replicas", orc_mc, "replicas for the cross-check");
  oracle->add_option("--seed", orc_seed, "rng seed");
  oracle->add_flag("--equivalence", orc_equivalence, "run the engine-equivalence battery");
  oracle->add_option("--instances", orc_instances, "battery size");

  try {
    app.parse(argc, argv);

    if (simulate->parsed()) {
      if (!sim_config.empty()) {
        const hb::RunConfig config = hb::read_config(sim_config);
        return run_simulate(hb::experiment_from_config(config), config.output,
                            config.format, config.verbosity);
      }
      hb::ExperimentSpec spec{
          hb::TorusShape(sim_d, sim_n, sim_theta),
          scaling_from_flags(sim_p_opt, sim_p, sim_a, sim_alpha)};
      spec.events = parse_events(sim_events);
      spec.replicas = sim_replicas;
      spec.seed = sim_seed;
      spec.ci_level = sim_ci;
      return run_simulate(spec, sim_output, sim_format, sim_verbosity);
    }

    if (sweep_cmd->parsed()) {
      hb::SweepSpec spec = [&] {
        if (!sw_config.empty())
          return hb::sweep_from_config(hb::read_config(sw_config));
        hb::Scaling scaling = sw_alpha.empty()
                                  ? hb::Scaling::raw(0.0)
                                  : hb::Scaling::critical(
                                        sw_a, hb::parse_rational(sw_alpha));
        hb::ExperimentSpec base{hb::TorusShape(sw_d, std::max<int64_t>(
                                                          2, sw_ns.empty()
                                                                 ? 2
                                                                 : sw_ns[0]),
                                               sw_theta),
                                scaling};
        base.events = parse_events(sw_events);
        base.replicas = sw_replicas;
        base.seed = sw_seed;
        hb::SweepSpec out{std::move(base), sw_ns, sw_as, {}};
        for (const std::string& text : sw_alphas)
          out.alpha_values.push_back(hb::parse_rational(text));
        return out;
      }();
      const std::string output = sw_config.empty()
                                     ? sw_output
                                     : hb::read_config(sw_config).output;
      hb::CsvStreamWriter writer(output, &std::cout);
      const hb::SweepResult result =
          hb::sweep(spec, [&](const hb::EstimateReport& report) {
            writer.append(hb::rows_from_report(report));
          });
      for (const std::string& error : result.errors)
        std::cerr << "sweep error: " << error << "\n";
      return 0;
    }

    if (limits->parsed()) {
      std::vector<double> grid =
          lim_grid.empty() ? std::vector<double>{lim_a} : parse_grid(lim_grid);
      std::ostringstream out;
      if (lim_mode == "2d" || lim_mode == "3d" || lim_mode == "good") {
        if (grid.size() == 1) {
          const double value = lim_mode == "2d"
                                   ? hb::spanning_limit_2d(lim_theta, grid[0])
                                   : lim_mode == "3d"
                                         ? hb::spanning_limit_3d_theta3(grid[0])
                                         : hb::good_probability_limit(grid[0]);
          out << hb::format_double(value) << "\n";
        } else {
          out << "a,value\n";
          for (double a : grid) {
            const double value = lim_mode == "2d"
                                     ? hb::spanning_limit_2d(lim_theta, a)
                                     : lim_mode == "3d"
                                           ? hb::spanning_limit_3d_theta3(a)
                                           : hb::good_probability_limit(a);
            out << hb::format_double(a) << ',' << hb::format_double(value)
                << "\n";
          }
        }
      } else if (lim_mode == "means") {
        out << "a,basic,enhanced_basic,line,line_empty_axis,"
               "non_enhanced_line_axis,enhanced_line\n";
        for (double a : grid) {
          const hb::PoissonMeans means = hb::poisson_means(a);
          out << hb::format_double(a) << ',' << hb::format_double(means.basic)
              << ',' << hb::format_double(means.enhanced_basic) << ','
              << hb::format_double(means.line) << ','
              << hb::format_double(means.line_empty_axis) << ','
              << hb::format_double(means.non_enhanced_line_axis) << ','
              << hb::format_double(means.enhanced_line) << "\n";
        }
      } else {
        throw hb::DomainError("limits: mode must be 2d, 3d, good or means");
      }
      emit(out.str(), lim_output);
      return 0;
    }

    if (exponents->parsed()) {
      const ThetaRange range = parse_theta_range(exp_theta);
      std::ostringstream out;
      if (exp_epl) {
        out << "d,theta,lower_exponent,upper_exponent,theta_below_validity\n";
        for (int theta = range.lo; theta <= range.hi; ++theta) {
          const auto bounds = hb::plane_threshold_exponent_bounds(exp_d, theta);
          out << exp_d << ',' << theta << ','
              << hb::format_double(bounds.lower_exponent) << ','
              << hb::format_double(bounds.upper_exponent) << ','
              << (bounds.theta_below_validity ? 1 : 0) << "\n";
        }
      } else if (exp_figure) {
        const std::vector<double> grid =
            exp_grid.empty() ? parse_grid("1.05:0.05:3.0") : parse_grid(exp_grid);
        hb::write_figure_csv(out, hb::figure_data(exp_d, range.lo, range.hi, grid));
      } else {
        hb::write_exponent_table_csv(
            out, hb::exponent_table(exp_d, range.lo, range.hi));
      }
      emit(out.str(), exp_output);
      return 0;
    }

    if (detect->parsed()) {
      const hb::Configuration config = hb::read_configuration_file(det_input);
      nlohmann::json result;
      result["d"] = config.shape().d();
      result["n"] = config.shape().n();
      result["theta"] = config.shape().theta();
      result["open_count"] = config.open_count();
      if (config.shape().d() == 3) {
        const hb::ConfigCounts counts = hb::count_configurations(config);
        result["basic"] = counts.basic;
        result["enhanced_basic"] = counts.enhanced_basic;
        result["line"] = {counts.line[0], counts.line[1], counts.line[2]};
        result["line_empty"] = {counts.line_empty[0], counts.line_empty[1],
                                counts.line_empty[2]};
        result["enhanced_line"] = {counts.enhanced_line[0],
                                   counts.enhanced_line[1],
                                   counts.enhanced_line[2]};
        result["non_enhanced_line"] = {counts.non_enhanced_line[0],
                                       counts.non_enhanced_line[1],
                                       counts.non_enhanced_line[2]};
        result["good_class"] =
            hb::good_class_name(hb::classify_from_counts(counts));
      }
      const hb::DynamicsResult dynamics = hb::evolve_fast(config);
      result["spanned"] = dynamics.spanned;
      result["open_line"] = dynamics.open_line_found;
      result["open_plane"] = dynamics.open_plane_found;
      result["above_threshold"] = dynamics.above_threshold_initial;
      result["rounds"] = dynamics.rounds;
      result["newly_opened"] = dynamics.newly_opened;
      if (det_f_lines) {
        int64_t fired = 0;
        for (int64_t l = 0; l < config.shape().lines_per_axis(); ++l) {
          const hb::LineId line = hb::line_of_index(config.shape(), l);
          fired += hb::detect_F_line(config, line);
        }
        result["f_lines_fired"] = fired;
      }
      std::cout << result.dump(2) << "\n";
      return 0;
    }

    if (oracle->parsed()) {
      if (orc_equivalence) {
        const auto result = hb::engine_equivalence_battery(orc_instances, orc_seed);
        std::cout << "instances: " << result.instances
                  << "\nmismatches: " << result.mismatches << "\n";
        if (result.mismatches) {
          std::cout << "first mismatch: " << result.first_mismatch << "\n";
          return 1;
        }
        return 0;
      }
      const auto kind = hb::event_kind_from_name(orc_event);
      if (!kind) throw hb::DomainError("unknown event '" + orc_event + "'");
      const hb::TorusShape shape(orc_d, orc_n, orc_theta);
      const double exact = hb::exact_probability(shape, orc_p, *kind);
      hb::ExperimentSpec spec{shape, hb::Scaling::raw(orc_p)};
      spec.events = {*kind};
      spec.replicas = orc_mc;
      spec.seed = orc_seed;
      const hb::EstimateReport report = hb::run(spec);
      const hb::EventEstimate& row = report.events.at(0);
      std::cout << "exact " << orc_event << " probability: "
                << hb::format_double(exact) << "\n";
      std::cout << "mc p_hat: " << hb::format_double(row.p_hat) << " ci ["
                << hb::format_double(row.ci_low) << ", "
                << hb::format_double(row.ci_high) << "] replicas "
                << row.replicas << " seed " << orc_seed << "\n";
      std::cout << "verdict: "
                << (exact >= row.ci_low && exact <= row.ci_high ? "COVERED"
                                                                : "NOT-COVERED")
                << "\n";
      return 0;
    }

    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const hb::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const hb::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

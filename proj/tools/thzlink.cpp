// Copyright 2026 The thzlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch CLI over the thzlink library. Every command is deterministic:
// randomness only enters through --seed, outputs are written atomically,
// and numbers print with 9 significant digits.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thzlink/alignment.hpp"
#include "thzlink/channel.hpp"
#include "thzlink/config.hpp"
#include "thzlink/errors.hpp"
#include "thzlink/fading.hpp"
#include "thzlink/format.hpp"
#include "thzlink/rng.hpp"
#include "thzlink/stats.hpp"
#include "thzlink/trajectory.hpp"

namespace {

using namespace thzlink;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::IoError:
      return kExitIo;
    case ErrorKind::NoConvergence:
    case ErrorKind::NoDrop:
      return kExitNumeric;
    default:
      return kExitUsage;  // usage, config or input-contract violation
  }
}

config::Scenario scenario_from(const std::string& config_path) {
  if (config_path.empty()) return config::default_scenario();
  return config::load_scenario(config_path);
}

channel::ModelMode parse_mode(const std::string& mode) {
  if (mode == "full") return channel::ModelMode::Full;
  if (mode == "calibrated") return channel::ModelMode::Calibrated;
  throw Error(ErrorKind::ParseError,
              "--mode must be 'full' or 'calibrated', got '" + mode + "'");
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    values.push_back(format::parse_double(token, flag));
  }
  if (values.empty()) {
    throw Error(ErrorKind::ParseError, flag + ": empty list");
  }
  return values;
}

channel::AxisSpec parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ':')) parts.push_back(token);
  if (parts.size() != 4) {
    throw Error(ErrorKind::ParseError,
                "--axes: each axis must be name:min:max:step, got '" + text +
                    "'");
  }
  channel::AxisSpec axis;
  axis.name = parts[0];
  axis.min = format::parse_double(parts[1], "--axes");
  axis.max = format::parse_double(parts[2], "--axes");
  axis.step = format::parse_double(parts[3], "--axes");
  try {
    axis.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, std::string("--axes: ") + e.what());
  }
  return axis;
}

std::pair<channel::AxisSpec, channel::AxisSpec> parse_axes(
    const std::string& text) {
  std::vector<std::string> specs;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) specs.push_back(token);
  if (specs.size() != 2) {
    throw Error(ErrorKind::ParseError,
                "--axes: expected exactly two axis specs separated by a "
                "comma");
  }
  return {parse_axis(specs[0]), parse_axis(specs[1])};
}

/// Reads one named column from a CSV file; empty cells are skipped.
std::vector<double> read_csv_column(const std::string& path,
                                    const std::string& column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open input: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::ParseError, path + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  std::size_t index = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) index = i;
  }
  if (index == header.size()) {
    throw Error(ErrorKind::MissingColumn,
                path + ": missing column \"" + column + "\"");
  }

  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (index >= cells.size() || cells[index].empty()) continue;
    values.push_back(format::parse_double(
        cells[index], path + ":" + std::to_string(line_no)));
  }
  return values;
}

int cmd_simulate(const std::string& config_path, std::uint64_t seed,
                 const std::string& out_path) {
  const config::Scenario scenario = scenario_from(config_path);
  Rng pose_rng(seed);
  Rng fading_rng(derive_seed(seed, 1));

  trajectory::FlightLog log =
      trajectory::simulate_hover(scenario.nominal_uav, scenario.jitter,
                                 pose_rng);
  log.station = scenario.station;
  log.seed = seed;
  const channel::Link link = scenario.link();
  for (auto& sample : log.samples) {
    sample.power_dbm = channel::sample_snr_db(
        link, sample.pose(), scenario.mode, scenario.fading, fading_rng);
  }
  trajectory::write_flight_log(log, out_path);
  return 0;
}

int cmd_power_map(const std::string& config_path, const std::string& mode_str,
                  const std::string& axes_str, bool with_fading,
                  std::uint64_t seed, const std::string& out_path) {
  const config::Scenario scenario = scenario_from(config_path);
  const channel::ModelMode mode =
      mode_str.empty() ? scenario.mode : parse_mode(mode_str);
  const auto [axis1, axis2] = parse_axes(axes_str);

  std::optional<fading::WeibullParams> fading;
  Rng rng(seed);
  if (with_fading) fading = scenario.fading;

  const channel::PowerMap map =
      channel::power_map(scenario.link(), scenario.nominal_uav, axis1, axis2,
                         mode, fading, with_fading ? &rng : nullptr);
  const bool json =
      out_path.size() >= 5 &&
      out_path.compare(out_path.size() - 5, 5, ".json") == 0;
  format::write_file_atomic(out_path, json ? map.to_json() : map.to_csv());
  return 0;
}

int cmd_fit_fading(const std::string& input_path, const std::string& column,
                   const std::string& model, const std::string& config_path,
                   const std::string& out_path) {
  std::vector<double> samples;
  if (!config_path.empty()) {
    // Round-trip mode: reconstruct the per-sample fading loss
    // (predicted mean minus measured power) from a flight log.
    if (column != "power_dbm") {
      throw Error(ErrorKind::InvalidParameter,
                  "--config implies fitting the fading loss; --column must "
                  "stay power_dbm");
    }
    const config::Scenario scenario = scenario_from(config_path);
    const trajectory::FlightLog log = trajectory::load_flight_log(input_path);
    const auto predictions = channel::predict_over_log(log, scenario.link(),
                                                       scenario.mode);
    for (const auto& p : predictions) {
      if (p.residual_db.has_value()) samples.push_back(-*p.residual_db);
    }
  } else {
    samples = read_csv_column(input_path, column);
  }
  if (samples.empty()) {
    throw Error(ErrorKind::EmptySamples,
                "no usable values in column \"" + column + "\"");
  }

  fading::FitReport report;
  if (model == "auto") {
    report = fading::classify_fading(samples);
  } else if (model == "weibull") {
    report.model = fading::FadingModel::Weibull;
    report.weibull = fading::weibull_fit_mle(samples);
    report.ks_weibull = stats::ks_statistic(samples, [&](double x) {
      return fading::weibull_cdf(x, *report.weibull);
    });
    report.ks_statistic = report.ks_weibull;
    report.sample_count = samples.size();
  } else if (model == "rician") {
    report.model = fading::FadingModel::Rician;
    report.rician = fading::rician_fit_moments(samples);
    report.ks_rician = stats::ks_statistic(samples, [&](double x) {
      return fading::rician_cdf(x, *report.rician);
    });
    report.ks_statistic = report.ks_rician;
    report.sample_count = samples.size();
  } else {
    throw Error(ErrorKind::ParseError,
                "--model must be auto, weibull or rician, got '" + model +
                    "'");
  }
  format::write_file_atomic(out_path, report.to_json());
  return 0;
}

int cmd_correlate(const std::string& input_path,
                  const std::string& config_path,
                  const std::string& out_path) {
  const config::Scenario scenario = scenario_from(config_path);
  const trajectory::FlightLog log = trajectory::load_flight_log(input_path);
  const stats::CorrelationReport report =
      stats::correlation_matrix(log, scenario.station, scenario.nominal_uav);
  format::write_file_atomic(out_path, report.to_json());
  return 0;
}

int cmd_align_range(const std::string& config_path,
                    const std::string& dist_list,
                    const std::string& hpbw_list, const std::string& pattern,
                    const std::string& out_path) {
  const config::Scenario scenario = scenario_from(config_path);
  const std::vector<double> distances =
      parse_number_list(dist_list, "--dist-list");
  const std::vector<double> hpbws = parse_number_list(hpbw_list, "--hpbw-list");
  alignment::PatternConfig config;
  if (pattern == "tx") {
    config = alignment::PatternConfig::TxOnly;
  } else if (pattern == "txrx") {
    config = alignment::PatternConfig::TxAndRx;
  } else {
    throw Error(ErrorKind::ParseError,
                "--pattern must be 'tx' or 'txrx', got '" + pattern + "'");
  }
  const auto rows =
      alignment::sweep_3db(scenario.link(), distances, hpbws, config);
  format::write_file_atomic(out_path, alignment::sweep_to_csv(rows));
  return 0;
}

int cmd_predict(const std::string& config_path, const std::string& log_path,
                const std::string& out_path) {
  const config::Scenario scenario = scenario_from(config_path);
  const trajectory::FlightLog log = trajectory::load_flight_log(log_path);
  const auto predictions =
      channel::predict_over_log(log, scenario.link(), scenario.mode);

  std::ostringstream out;
  out << "t_s,predicted_snr_db,measured_dbm,residual_db\n";
  double sum = 0.0, sum_sq = 0.0, max_abs = 0.0;
  std::size_t n_measured = 0;
  for (const auto& p : predictions) {
    out << format::sig9(p.t_s) << ',' << format::sig9(p.predicted_snr_db)
        << ',';
    if (p.measured_dbm.has_value()) out << format::sig9(*p.measured_dbm);
    out << ',';
    if (p.residual_db.has_value()) {
      out << format::sig9(*p.residual_db);
      sum += *p.residual_db;
      sum_sq += *p.residual_db * *p.residual_db;
      max_abs = std::max(max_abs, std::fabs(*p.residual_db));
      ++n_measured;
    }
    out << '\n';
  }
  format::write_file_atomic(out_path, out.str());

  if (n_measured > 0) {
    const double mean = sum / static_cast<double>(n_measured);
    const double var = sum_sq / static_cast<double>(n_measured) - mean * mean;
    std::cout << "residuals over " << n_measured
              << " measured samples: mean " << format::sig9(mean) << " dB, std "
              << format::sig9(std::sqrt(std::max(var, 0.0))) << " dB, max |r| "
              << format::sig9(max_abs) << " dB\n";
  } else {
    std::cout << "no measured power in log; wrote predictions only\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "thzlink: deterministic simulation and estimation for directional "
      "ground-to-UAV THz links"};
  app.require_subcommand(0, 1);

  bool print_config = false;
  app.add_flag("--print-config", print_config,
               "Print the default scenario config and exit");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Synthesize a hover flight log with sampled SNR");
  std::string sim_config, sim_out;
  std::uint64_t sim_seed = 0;
  simulate->add_option("--config", sim_config, "Scenario config file");
  simulate->add_option("--seed", sim_seed, "RNG seed (default 0)");
  simulate->add_option("--out", sim_out, "Output flight-log CSV")->required();

  // power-map
  auto* power_map = app.add_subcommand(
      "power-map", "SNR map over a grid of UAV offsets from the nominal pose");
  std::string pm_config, pm_mode, pm_axes, pm_out;
  bool pm_fading = false;
  std::uint64_t pm_seed = 0;
  power_map->add_option("--config", pm_config, "Scenario config file");
  power_map->add_option("--mode", pm_mode,
                        "Model mode: full or calibrated (default from config)");
  power_map
      ->add_option("--axes", pm_axes,
                   "Two axis specs name:min:max:step joined by a comma; names "
                   "are a, b, height")
      ->required();
  power_map->add_flag("--fading", pm_fading, "Sample fading per cell");
  power_map->add_option("--seed", pm_seed, "RNG seed for --fading");
  power_map->add_option("--out", pm_out, "Output .csv or .json")->required();

  // fit-fading
  auto* fit_fading = app.add_subcommand(
      "fit-fading", "Fit or classify a fading distribution from a CSV column");
  std::string ff_input, ff_column = "power_dbm", ff_model = "auto", ff_config,
              ff_out;
  fit_fading->add_option("--input", ff_input, "Input CSV")->required();
  fit_fading->add_option("--column", ff_column,
                         "Column to fit (default power_dbm)");
  fit_fading->add_option("--model", ff_model, "auto, weibull or rician");
  fit_fading->add_option(
      "--config", ff_config,
      "Fit the fading loss (model prediction minus measured power) of a "
      "flight log instead of raw column values");
  fit_fading->add_option("--out", ff_out, "Output FitReport JSON")->required();

  // correlate
  auto* correlate = app.add_subcommand(
      "correlate",
      "Pearson correlation of movement, orientation and power over a log");
  std::string co_input, co_config, co_out;
  correlate->add_option("--input", co_input, "Input flight-log CSV")
      ->required();
  correlate->add_option("--config", co_config,
                        "Scenario config for the nominal pose");
  correlate->add_option("--out", co_out, "Output CorrelationReport JSON")
      ->required();

  // align-range
  auto* align_range = app.add_subcommand(
      "align-range", "3-dB beam-alignment diameter over distance x HPBW");
  std::string ar_config, ar_dists, ar_hpbws, ar_pattern = "tx", ar_out;
  align_range->add_option("--config", ar_config, "Scenario config file");
  align_range->add_option("--dist-list", ar_dists,
                          "Comma-separated distances in m")
      ->required();
  align_range->add_option("--hpbw-list", ar_hpbws,
                          "Comma-separated beamwidths in deg")
      ->required();
  align_range->add_option("--pattern", ar_pattern,
                          "tx (receiver tracks) or txrx (both lobes roll off)");
  align_range->add_option("--out", ar_out, "Output sweep CSV")->required();

  // predict
  auto* predict = app.add_subcommand(
      "predict", "Evaluate the model over a flight log and report residuals");
  std::string pr_config, pr_log, pr_out;
  predict->add_option("--config", pr_config, "Scenario config file");
  predict->add_option("--log", pr_log, "Input flight-log CSV")->required();
  predict->add_option("--out", pr_out, "Output prediction CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (print_config) {
      std::cout << config::print_scenario(config::default_scenario());
      return 0;
    }
    if (simulate->parsed()) return cmd_simulate(sim_config, sim_seed, sim_out);
    if (power_map->parsed()) {
      return cmd_power_map(pm_config, pm_mode, pm_axes, pm_fading, pm_seed,
                           pm_out);
    }
    if (fit_fading->parsed()) {
      return cmd_fit_fading(ff_input, ff_column, ff_model, ff_config, ff_out);
    }
    if (correlate->parsed()) return cmd_correlate(co_input, co_config, co_out);
    if (align_range->parsed()) {
      return cmd_align_range(ar_config, ar_dists, ar_hpbws, ar_pattern, ar_out);
    }
    if (predict->parsed()) return cmd_predict(pr_config, pr_log, pr_out);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

// Copyright 2026 The pairest Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pairest {

enum class Quantity {
  kQfi00,
  kQfi11,
  kFi00,
  kFi11,
  kUpsilon,
  kWeakComm,
  kStokesXX,
  kMonteCarlo,
};

std::string_view quantity_name(Quantity q);
/// Throws ConfigError for unknown names.
Quantity parse_quantity(std::string_view name);

struct EpsilonGrid {
  double min = -1.0;
  double max = 1.0;
  int steps = 81;

  /// Evenly spaced, endpoints included.
  std::vector<double> points() const;
};

struct MonteCarloSettings {
  std::uint64_t shots = 100000;
  std::size_t repeats = 200;
  std::uint64_t seed = 1;
};

struct SweepConfig {
  Quantity quantity = Quantity::kQfi00;
  EpsilonGrid epsilon_grid;
  std::vector<double> phi1_list{0.1, 0.5, 1.0, 2.0};
  double phi0 = 0.78539816339744830962;  // pi/4
  double sigma = 1.0;
  std::optional<MonteCarloSettings> mc;
  std::filesystem::path output_path;
  unsigned workers = 0;  ///< 0: one per hardware thread

  /// Throws ConfigError on grid bounds outside [-1, 1], steps < 2,
  /// sigma <= 0, or an empty phi1 list.
  void validate() const;
};

/// Reads a JSON config. Keys mirror the long CLI flags:
/// quantity, phi0, phi0_k, phi1 (array), eps_min, eps_max, eps_steps, sigma,
/// mc_shots, mc_repeats, seed, out, workers, plus a free-text description.
/// Throws ConfigError, also for unknown keys.
SweepConfig load_config_file(const std::filesystem::path& path);

inline constexpr std::string_view kSweepCsvHeader =
    "quantity,phi0,phi1,epsilon,sigma,value,status";

struct SweepRow {
  double phi1 = 0.0;
  double epsilon = 0.0;
  std::optional<double> value;  ///< empty when singular
};

/// One row per (phi1, epsilon), sorted by phi1 then epsilon.
std::vector<SweepRow> compute_sweep(const SweepConfig& config);

/// Decimal with 12 significant digits, '.' separator.
std::string format_value(double v);

std::string sweep_csv(const SweepConfig& config,
                      const std::vector<SweepRow>& rows);

inline constexpr std::string_view kMonteCarloCsvHeader =
    "phi0,phi1,epsilon,sigma,shots,m_var_phi0,m_var_phi1,finv00,finv11,"
    "qinv00,qinv11,repeats,seed,local_maxima,status";

struct MonteCarloRow {
  double phi1 = 0.0;
  double epsilon = 0.0;
  bool singular = false;
  double m_var_phi0 = 0.0;
  double m_var_phi1 = 0.0;
  double finv00 = 0.0;  ///< (F^-1)_00
  double finv11 = 0.0;
  double qinv00 = 0.0;  ///< (Q^-1)_00
  double qinv11 = 0.0;
  std::size_t local_maxima = 0;
};

/// Requires config.mc; rejects repeats < 2.
std::vector<MonteCarloRow> compute_montecarlo(const SweepConfig& config);

std::string montecarlo_csv(const SweepConfig& config,
                           const std::vector<MonteCarloRow>& rows);

struct RunSummary {
  std::size_t rows = 0;
  std::size_t singular = 0;
};

/// Computes and writes the CSV to config.output_path (or returns it in
/// `csv_out` when the path is empty). Throws ConfigError for an unwritable
/// path.
RunSummary run_sweep(const SweepConfig& config, std::string* csv_out = nullptr);
RunSummary run_montecarlo(const SweepConfig& config,
                          std::string* csv_out = nullptr);

}  // namespace pairest

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

#include "pairest/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "pairest/errors.hpp"
#include "pairest/estimation.hpp"
#include "pairest/montecarlo.hpp"
#include "pairest/parallel.hpp"
#include "pairest/probe_state.hpp"

namespace pairest {
namespace {

constexpr std::array<std::pair<Quantity, std::string_view>, 8> kQuantityNames{{
    {Quantity::kQfi00, "qfi00"},
    {Quantity::kQfi11, "qfi11"},
    {Quantity::kFi00, "fi00"},
    {Quantity::kFi11, "fi11"},
    {Quantity::kUpsilon, "upsilon"},
    {Quantity::kWeakComm, "weak_comm"},
    {Quantity::kStokesXX, "stokes_xx"},
    {Quantity::kMonteCarlo, "montecarlo"},
}};

// Quantities that need phi1 != 0.
bool singular_at_pure_boundary(Quantity q) {
  return q == Quantity::kQfi11 || q == Quantity::kFi11 ||
         q == Quantity::kUpsilon || q == Quantity::kWeakComm;
}

double evaluate(Quantity q, const PhaseParams& p, const SpectralParams& s,
                const Povm& povm) {
  switch (q) {
    case Quantity::kQfi00:
      return qfi_matrix(p, s).m00;
    case Quantity::kQfi11:
      return qfi_matrix(p, s).m11;
    case Quantity::kFi00:
      return fi_matrix(p, s, povm).m00;
    case Quantity::kFi11:
      return fi_matrix(p, s, povm).m11;
    case Quantity::kUpsilon:
      return upsilon(fi_matrix(p, s, povm), qfi_matrix(p, s));
    case Quantity::kWeakComm:
      return weak_commutativity(p, s);
    case Quantity::kStokesXX:
      return stokes_correlator(p, s);
    case Quantity::kMonteCarlo:
      break;
  }
  throw ConfigError("quantity 'montecarlo' is not a sweep quantity");
}

std::vector<double> sorted_phi1(const SweepConfig& config) {
  std::vector<double> phi1 = config.phi1_list;
  std::stable_sort(phi1.begin(), phi1.end());
  return phi1;
}

void write_output(const std::filesystem::path& path, const std::string& csv) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot open output path '" + path.string() +
                      "' for writing");
  }
  out << csv;
  out.flush();
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

// Fails fast, before a long computation, if the path cannot be written.
void probe_output(const std::filesystem::path& path) {
  if (path.empty()) return;
  std::ofstream probe(path, std::ios::binary | std::ios::app);
  if (!probe) {
    throw ConfigError("cannot open output path '" + path.string() +
                      "' for writing");
  }
}

template <typename T>
T json_get(const nlohmann::json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string_view quantity_name(Quantity q) {
  for (const auto& [value, name] : kQuantityNames) {
    if (value == q) return name;
  }
  return "unknown";
}

Quantity parse_quantity(std::string_view name) {
  for (const auto& [value, known] : kQuantityNames) {
    if (known == name) return value;
  }
  throw ConfigError("invalid quantity name '" + std::string(name) +
                    "' (expected qfi00, qfi11, fi00, fi11, upsilon, "
                    "weak_comm, stokes_xx or montecarlo)");
}

std::vector<double> EpsilonGrid::points() const {
  std::vector<double> pts(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    pts[i] = min + (max - min) * static_cast<double>(i) / (steps - 1);
  }
  pts.back() = max;
  return pts;
}

void SweepConfig::validate() const {
  const auto& g = epsilon_grid;
  if (!(g.min >= -1.0 && g.max <= 1.0 && g.min <= g.max)) {
    throw ConfigError("epsilon grid bounds must satisfy -1 <= min <= max <= 1");
  }
  if (g.steps < 2) throw ConfigError("epsilon grid needs at least 2 steps");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("sigma must be positive");
  }
  if (phi1_list.empty()) throw ConfigError("phi1 list is empty");
  for (double v : phi1_list) {
    if (!std::isfinite(v)) throw ConfigError("phi1 values must be finite");
  }
  if (!std::isfinite(phi0)) throw ConfigError("phi0 must be finite");
  if (mc) {
    if (mc->shots < 1) throw ConfigError("mc shots must be >= 1");
    if (mc->repeats < 2) {
      throw ConfigError("mc repeats: fewer than 2 estimates");
    }
  }
}

SweepConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path.string() + "': " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  static constexpr std::array<std::string_view, 14> kKnownKeys{
      "description", "quantity", "phi0",     "phi0_k",    "phi1",
      "eps_min",     "eps_max",  "eps_steps", "sigma",    "out",
      "workers",     "mc_shots", "mc_repeats", "seed"};
  for (const auto& item : doc.items()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), item.key()) == kKnownKeys.end()) {
      throw ConfigError("config file '" + path.string() + "': unknown key '" +
                        item.key() + "'");
    }
  }

  SweepConfig config;
  if (doc.contains("quantity")) {
    config.quantity = parse_quantity(json_get<std::string>(doc, "quantity"));
  }
  if (doc.contains("phi0")) config.phi0 = json_get<double>(doc, "phi0");
  if (doc.contains("phi0_k")) {
    config.phi0 = json_get<int>(doc, "phi0_k") * std::numbers::pi / 4.0;
  }
  if (doc.contains("phi1")) {
    config.phi1_list = json_get<std::vector<double>>(doc, "phi1");
  }
  if (doc.contains("eps_min")) config.epsilon_grid.min = json_get<double>(doc, "eps_min");
  if (doc.contains("eps_max")) config.epsilon_grid.max = json_get<double>(doc, "eps_max");
  if (doc.contains("eps_steps")) config.epsilon_grid.steps = json_get<int>(doc, "eps_steps");
  if (doc.contains("sigma")) config.sigma = json_get<double>(doc, "sigma");
  if (doc.contains("out")) config.output_path = json_get<std::string>(doc, "out");
  if (doc.contains("workers")) config.workers = json_get<unsigned>(doc, "workers");
  if (doc.contains("mc_shots") || doc.contains("mc_repeats") ||
      doc.contains("seed")) {
    MonteCarloSettings mc;
    if (doc.contains("mc_shots")) mc.shots = json_get<std::uint64_t>(doc, "mc_shots");
    if (doc.contains("mc_repeats")) mc.repeats = json_get<std::size_t>(doc, "mc_repeats");
    if (doc.contains("seed")) mc.seed = json_get<std::uint64_t>(doc, "seed");
    config.mc = mc;
  }
  return config;
}

std::vector<SweepRow> compute_sweep(const SweepConfig& config) {
  config.validate();
  if (config.quantity == Quantity::kMonteCarlo) {
    throw ConfigError("quantity 'montecarlo' is not a sweep quantity");
  }
  const std::vector<double> eps = config.epsilon_grid.points();
  const std::vector<double> phi1 = sorted_phi1(config);
  const Povm povm = stokes_povm();

  std::vector<SweepRow> rows(phi1.size() * eps.size());
  parallel_for(rows.size(), config.workers, [&](std::size_t idx) {
    SweepRow& row = rows[idx];
    row.phi1 = phi1[idx / eps.size()];
    row.epsilon = eps[idx % eps.size()];
    const PhaseParams p{config.phi0, row.phi1};
    if (singular_at_pure_boundary(config.quantity) &&
        on_pure_state_boundary(p)) {
      return;
    }
    try {
      row.value = evaluate(config.quantity, p,
                           SpectralParams{config.sigma, row.epsilon, 0.0}, povm);
    } catch (const SingularPointError&) {
      row.value.reset();
    }
  });
  return rows;
}

std::string format_value(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sweep_csv(const SweepConfig& config,
                      const std::vector<SweepRow>& rows) {
  std::string csv(kSweepCsvHeader);
  csv += '\n';
  const std::string name(quantity_name(config.quantity));
  const std::string phi0 = format_value(config.phi0);
  const std::string sigma = format_value(config.sigma);
  for (const auto& row : rows) {
    csv += name;
    csv += ',' + phi0 + ',' + format_value(row.phi1) + ',' +
           format_value(row.epsilon) + ',' + sigma + ',';
    if (row.value) {
      csv += format_value(*row.value) + ",ok\n";
    } else {
      csv += ",singular\n";
    }
  }
  return csv;
}

std::vector<MonteCarloRow> compute_montecarlo(const SweepConfig& config) {
  config.validate();
  if (!config.mc) throw ConfigError("montecarlo run requires an mc block");
  const MonteCarloSettings& mc = *config.mc;
  const std::vector<double> eps = config.epsilon_grid.points();
  const std::vector<double> phi1 = sorted_phi1(config);
  const Povm povm = stokes_povm();
  const double shots = static_cast<double>(mc.shots);

  std::vector<MonteCarloRow> rows;
  rows.reserve(phi1.size() * eps.size());
  for (double slope : phi1) {
    for (double e : eps) {
      MonteCarloRow row;
      row.phi1 = slope;
      row.epsilon = e;
      const PhaseParams truth{config.phi0, slope};
      const SpectralParams spectrum{config.sigma, e, 0.0};
      try {
        const FisherPair fp = fisher_pair(truth, spectrum, povm);
        const Sym2 finv = sym2_inverse(fp.fisher);
        const Sym2 qinv = sym2_inverse(fp.qfi);
        const EstimationRun run = run_estimation(
            {truth, spectrum, mc.shots, mc.repeats, mc.seed, config.workers});
        row.m_var_phi0 = shots * run.empirical_cov.m00;
        row.m_var_phi1 = shots * run.empirical_cov.m11;
        row.finv00 = finv.m00;
        row.finv11 = finv.m11;
        row.qinv00 = qinv.m00;
        row.qinv11 = qinv.m11;
        row.local_maxima = run.local_maxima;
      } catch (const SingularPointError&) {
        row.singular = true;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string montecarlo_csv(const SweepConfig& config,
                           const std::vector<MonteCarloRow>& rows) {
  std::string csv(kMonteCarloCsvHeader);
  csv += '\n';
  const MonteCarloSettings mc = config.mc.value_or(MonteCarloSettings{});
  for (const auto& row : rows) {
    std::ostringstream line;
    line << format_value(config.phi0) << ',' << format_value(row.phi1) << ','
         << format_value(row.epsilon) << ',' << format_value(config.sigma)
         << ',' << mc.shots << ',';
    if (row.singular) {
      line << ",,,,,," << mc.repeats << ',' << mc.seed << ",,singular\n";
    } else {
      line << format_value(row.m_var_phi0) << ','
           << format_value(row.m_var_phi1) << ',' << format_value(row.finv00)
           << ',' << format_value(row.finv11) << ','
           << format_value(row.qinv00) << ',' << format_value(row.qinv11)
           << ',' << mc.repeats << ',' << mc.seed << ',' << row.local_maxima
           << ",ok\n";
    }
    csv += line.str();
  }
  return csv;
}

namespace {

template <typename Row>
RunSummary emit(const SweepConfig& config, const std::string& csv,
                const std::vector<Row>& rows, std::string* csv_out,
                std::size_t singular) {
  if (csv_out) *csv_out = csv;
  if (!config.output_path.empty()) write_output(config.output_path, csv);
  return {rows.size(), singular};
}

}  // namespace

RunSummary run_sweep(const SweepConfig& config, std::string* csv_out) {
  config.validate();
  probe_output(config.output_path);
  const auto rows = compute_sweep(config);
  const auto singular = static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const SweepRow& r) { return !r.value; }));
  return emit(config, sweep_csv(config, rows), rows, csv_out, singular);
}

RunSummary run_montecarlo(const SweepConfig& config, std::string* csv_out) {
  config.validate();
  probe_output(config.output_path);
  const auto rows = compute_montecarlo(config);
  const auto singular = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(),
                    [](const MonteCarloRow& r) { return r.singular; }));
  return emit(config, montecarlo_csv(config, rows), rows, csv_out, singular);
}

}  // namespace pairest

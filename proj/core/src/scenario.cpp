/* Copyright 2026 The Spinloop Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "spinloop/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace spinloop {

using nlohmann::json;

namespace {

std::string label_string(int n_spins, std::size_t flat) {
  const auto indices = flat_to_label(n_spins, flat);
  std::string s;
  for (int j : indices) s += static_cast<char>('0' + j);
  return s;
}

[[noreturn]] void config_fail(const std::string& where, const std::string& what) {
  throw ConfigError("config error at '" + where + "': " + what);
}

void parse_terms(const json& node, const std::string& where, HamiltonianSpec& spec) {
  if (!node.is_array()) config_fail(where, "expected an array of {indices, coeff} terms");
  for (const auto& term : node) {
    if (!term.contains("indices") || !term.contains("coeff"))
      config_fail(where, "term needs 'indices' and 'coeff'");
    std::vector<int> indices = term.at("indices").get<std::vector<int>>();
    if (static_cast<int>(indices.size()) != spec.n_spins())
      config_fail(where, "term index count must equal n_spins");
    for (int j : indices)
      if (j < 0 || j > 3) config_fail(where, "term indices must be in {0,1,2,3}");
    spec.add(indices, term.at("coeff").get<double>());
  }
}

HamiltonianSpec parse_hamiltonian(const json& node, const std::string& where, int n_spins) {
  HamiltonianSpec spec(n_spins);
  if (node.is_null()) return spec;
  if (!node.is_object()) config_fail(where, "expected an object");
  if (node.contains("terms")) parse_terms(node.at("terms"), where + ".terms", spec);
  if (node.contains("ising_chain")) {
    const auto& ch = node.at("ising_chain");
    const auto offsets = ch.at("offsets").get<std::vector<double>>();
    const auto couplings = ch.value("couplings", std::vector<double>(std::max(0, n_spins - 1), 0.0));
    try {
      spec += ising_chain(n_spins, offsets, couplings);
    } catch (const std::invalid_argument& e) {
      config_fail(where + ".ising_chain", e.what());
    }
  }
  if (node.contains("dipole_pairs")) {
    for (const auto& dp : node.at("dipole_pairs")) {
      try {
        spec += dipole_pair(n_spins, dp.at("i").get<int>(), dp.at("j").get<int>(),
                            dp.at("omega").get<double>());
      } catch (const std::invalid_argument& e) {
        config_fail(where + ".dipole_pairs", e.what());
      }
    }
  }
  return spec;
}

std::vector<ControlChannel> parse_channels(const json& node, int n_spins) {
  std::vector<ControlChannel> channels;
  if (!node.is_array() || node.empty())
    config_fail("channels", "expected a non-empty array of channel objects");
  for (const auto& ch : node) {
    try {
      if (ch.contains("nonselective")) {
        channels.push_back(nonselective_channel(n_spins, ch.at("nonselective").value("axis", 1)));
      } else if (ch.contains("selective")) {
        const int spin = ch.at("selective").at("spin").get<int>();
        auto all = selective_channels(n_spins);
        if (spin < 0 || spin >= n_spins) config_fail("channels.selective", "spin out of range");
        channels.push_back(std::move(all[static_cast<std::size_t>(spin)]));
      } else if (ch.contains("terms")) {
        HamiltonianSpec spec(n_spins);
        parse_terms(ch.at("terms"), "channels.terms", spec);
        channels.emplace_back(std::move(spec), ch.value("name", "custom"));
      } else {
        config_fail("channels", "channel needs 'nonselective', 'selective' or 'terms'");
      }
    } catch (const std::invalid_argument& e) {
      config_fail("channels", e.what());
    }
  }
  return channels;
}

StokesTensor parse_state(const json& node, const std::string& where, int n_spins,
                         std::uint64_t seed) {
  if (node.is_null()) config_fail(where, "missing state");
  if (node.is_object() && node.contains("product")) {
    const auto& factors = node.at("product");
    if (!factors.is_array() || static_cast<int>(factors.size()) != n_spins)
      config_fail(where + ".product", "need one 4-vector per spin");
    std::vector<SingleSpinBloch> blochs;
    for (const auto& f : factors) {
      const auto v = f.get<std::vector<double>>();
      if (v.size() != 4) config_fail(where + ".product", "each factor is a 4-vector");
      SingleSpinBloch b;
      for (int i = 0; i < 4; ++i) b.components[i] = v[static_cast<std::size_t>(i)];
      blochs.push_back(b);
    }
    return product_state(blochs);
  }
  if (node.is_object() && node.contains("tensor")) {
    const auto v = node.at("tensor").get<std::vector<double>>();
    if (v.size() != basis_size(n_spins))
      config_fail(where + ".tensor", "need 4^n components in flat-index order");
    Eigen::VectorXd c(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) c[static_cast<Eigen::Index>(i)] = v[i];
    return StokesTensor(n_spins, std::move(c));
  }
  if (node.is_object() && node.value("random_product", false)) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<SingleSpinBloch> blochs;
    for (int i = 0; i < n_spins; ++i) {
      Eigen::Vector3d dir(gauss(rng), gauss(rng), gauss(rng));
      dir.normalize();
      SingleSpinBloch b;
      b.components[0] = 0.70710678118654752440;
      b.components.tail<3>() = dir * 0.70710678118654752440;
      blochs.push_back(b);
    }
    return product_state(blochs);
  }
  config_fail(where, "state needs 'product', 'tensor' or 'random_product'");
}

double fid_rms_error(const Trajectory& traj) {
  if (!traj.has_desired()) return 0.0;
  const auto got = fid_series(traj);
  const auto want = fid_series_desired(traj);
  double acc = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double d = got[i] - want[i];
    acc += d * d;
  }
  return got.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(got.size()));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json regularity_to_json(const RegularityReport& r) {
  json j;
  j["energy_levels"] = r.energy_levels;
  json pairs = json::array();
  for (const auto& [a, b] : r.transition_pairs) pairs.push_back({a, b});
  j["transition_pairs"] = pairs;
  j["degenerate_levels"] = r.degenerate_levels;
  j["degenerate_transitions"] = r.degenerate_transitions;
  j["connected"] = r.connected;
  j["strongly_regular"] = r.strongly_regular;
  if (std::isfinite(r.min_level_gap)) j["min_level_gap"] = r.min_level_gap;
  if (std::isfinite(r.min_transition_gap)) j["min_transition_gap"] = r.min_transition_gap;
  return j;
}

}  // namespace

FeedbackLaw ScenarioConfig::make_law() const {
  return FeedbackLaw(law_kind, gains, channels);
}

SpinModel ScenarioConfig::make_model() const { return SpinModel{drift, channels}; }

ScenarioConfig parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ScenarioConfig cfg;
  try {
    cfg.name = doc.value("name", "scenario");
    cfg.description = doc.value("description", "");
    if (!doc.contains("n_spins")) config_fail("n_spins", "required");
    cfg.n_spins = doc.at("n_spins").get<int>();
    if (cfg.n_spins < 1 || cfg.n_spins > kMaxSpins)
      config_fail("n_spins", "outside supported range [1," + std::to_string(kMaxSpins) + "]");
    cfg.seed = doc.value("seed", std::uint64_t{0});

    cfg.drift = parse_hamiltonian(doc.value("drift", json()), "drift", cfg.n_spins);
    cfg.desired_drift = doc.contains("desired_drift")
                            ? parse_hamiltonian(doc.at("desired_drift"), "desired_drift", cfg.n_spins)
                            : cfg.drift;
    cfg.channels = parse_channels(doc.value("channels", json::array()), cfg.n_spins);

    const json fb = doc.value("feedback", json::object());
    cfg.law_kind = feedback_kind_from_string(fb.value("kind", "orbit_tracking"));
    cfg.gains = fb.value("gains", std::vector<double>{});
    if (cfg.gains.size() == 1 && cfg.channels.size() > 1)
      cfg.gains.assign(cfg.channels.size(), cfg.gains[0]);
    if (cfg.gains.size() != cfg.channels.size())
      config_fail("feedback.gains", "need one positive gain per channel");

    cfg.initial = parse_state(doc.value("initial", json()), "initial", cfg.n_spins, cfg.seed);
    cfg.desired_initial = doc.contains("desired_initial")
                              ? parse_state(doc.at("desired_initial"), "desired_initial",
                                            cfg.n_spins, cfg.seed + 1)
                              : cfg.initial;

    const json integ = doc.value("integrator", json::object());
    cfg.integrator.dt = integ.value("dt", 1e-3);
    cfg.integrator.t_final = integ.value("t_final", 1.0);
    cfg.integrator.record_every = integ.value("record_every", 1);
    cfg.integrator.renormalize = integ.value("renormalize", false);
    if (cfg.integrator.dt <= 0.0) config_fail("integrator.dt", "must be positive");
    if (cfg.integrator.t_final <= 0.0) config_fail("integrator.t_final", "must be positive");
    if (cfg.integrator.record_every < 1) config_fail("integrator.record_every", "must be >= 1");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config value error: ") + e.what());
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& config_json) {
  std::ifstream in(config_json);
  if (!in) throw ConfigError("cannot open config file: " + config_json.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

RunResult run_scenario(const ScenarioConfig& cfg) {
  RunResult result;
  result.summary.name = cfg.name;
  result.summary.singularity = singularity_diagnostic(cfg.initial, cfg.desired_initial);
  result.summary.regularity = strong_regularity(cfg.desired_drift, cfg.channels.front());
  result.summary.renormalized = cfg.integrator.renormalize;
  if (result.summary.singularity.near_singular)
    result.summary.warnings.push_back(
        "initial pair is near the singular set; convergence may be very slow");
  if (!result.summary.regularity.strongly_regular)
    result.summary.warnings.push_back(
        "desired drift is not strongly regular against the first channel");
  if (cfg.channels.size() > 1 && cfg.n_spins > 1) {
    // Selective channels assume well-separated local precessions relative to
    // the rf amplitude, and the rf amplitude scales with the gain. Report the
    // two numbers; choosing between them is the experiment designer's call.
    std::vector<double> local_offsets;
    for (int spin = 0; spin < cfg.n_spins; ++spin) {
      std::vector<int> idx(static_cast<std::size_t>(cfg.n_spins), 0);
      idx[static_cast<std::size_t>(spin)] = 3;
      local_offsets.push_back(cfg.drift.coeff(idx));
    }
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < local_offsets.size(); ++a)
      for (std::size_t b = a + 1; b < local_offsets.size(); ++b)
        min_gap = std::min(min_gap, std::abs(local_offsets[a] - local_offsets[b]));
    const double max_gain = *std::max_element(cfg.gains.begin(), cfg.gains.end());
    if (min_gap <= max_gain)
      result.summary.warnings.push_back(
          "per-channel addressing: smallest offset separation " + std::to_string(min_gap) +
          " does not exceed the largest gain " + std::to_string(max_gain));
  }

  const FeedbackLaw law = cfg.make_law();
  result.trajectory = simulate_closed_loop(cfg.make_model(), law, cfg.initial, cfg.desired_initial,
                                           cfg.desired_drift, cfg.integrator, &result.trace);

  const Trajectory& traj = result.trajectory;
  result.summary.v_initial = traj.lyapunov.front();
  result.summary.v_final = traj.lyapunov.back();
  double umin = std::numeric_limits<double>::infinity();
  double umax = -umin;
  for (const auto& u : traj.controls) {
    umin = std::min(umin, u.minCoeff());
    umax = std::max(umax, u.maxCoeff());
  }
  result.summary.u_min = umin;
  result.summary.u_max = umax;
  result.summary.norm_drift =
      std::abs(traj.states.back().tail(traj.states.back().size() - 1).norm() -
               traj.states.front().tail(traj.states.front().size() - 1).norm());
  for (const auto& w : traj.warnings) result.summary.warnings.push_back(w);
  return result;
}

std::string RunSummary::to_json() const {
  json j;
  j["name"] = name;
  j["v_initial"] = v_initial;
  j["v_final"] = v_final;
  j["u_min"] = u_min;
  j["u_max"] = u_max;
  j["norm_drift"] = norm_drift;
  j["renormalized"] = renormalized;
  j["singularity"] = {
      {"antipodal_product", singularity.antipodal_product},
      {"equatorial_pair", singularity.equatorial_pair},
      {"near_singular_margin", singularity.near_singular_margin},
      {"near_singular", singularity.near_singular},
      {"non_product_input", singularity.non_product_input},
  };
  j["regularity"] = regularity_to_json(regularity);
  j["warnings"] = warnings;
  return j.dump(2);
}

CheckResult check_scenario(const ScenarioConfig& cfg, int span_depth) {
  CheckResult result;
  for (const auto& ch : cfg.channels)
    result.regularity.push_back(strong_regularity(cfg.desired_drift, ch));
  const Generator gf = generator(cfg.drift);
  const Generator gc = generator(cfg.channels.front().spec);
  result.span = bracket_span(gf, gc, span_depth);
  return result;
}

std::string CheckResult::to_json(int n_spins) const {
  json j;
  json regs = json::array();
  for (const auto& r : regularity) regs.push_back(regularity_to_json(r));
  j["regularity"] = regs;
  json touched = json::array();
  for (std::size_t flat : span.touched) touched.push_back(label_string(n_spins, flat));
  json untouched = json::array();
  for (std::size_t flat : span.untouched) untouched.push_back(label_string(n_spins, flat));
  j["span"] = {
      {"dimension", span.dimension},
      {"full_dimension", static_cast<int>(basis_size(n_spins)) - 1},
      {"depth_saturated", span.depth_saturated},
      {"touched", touched},
      {"untouched", untouched},
  };
  return j.dump(2);
}

double fid(const StokesTensor& state) {
  double sum = 0.0;
  for (int i = 0; i < state.n_spins(); ++i) {
    const std::size_t flat = std::size_t{1} << (2 * (state.n_spins() - 1 - i));
    sum += state[flat];
  }
  return sum;
}

std::vector<double> fid_series(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.samples());
  for (const auto& s : traj.states) out.push_back(fid(StokesTensor(traj.n_spins, s)));
  return out;
}

std::vector<double> fid_series_desired(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.desired.size());
  for (const auto& s : traj.desired) out.push_back(fid(StokesTensor(traj.n_spins, s)));
  return out;
}

SweepSpec load_sweep(const std::filesystem::path& sweep_json) {
  std::ifstream in(sweep_json);
  if (!in) throw ConfigError("cannot open sweep file: " + sweep_json.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("sweep is not valid JSON: ") + e.what());
  }
  SweepSpec spec;
  try {
    spec.parameter = doc.at("parameter").get<std::string>();
    spec.values = doc.at("values").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep field error: ") + e.what());
  }
  if (spec.values.empty()) throw ConfigError("sweep grid is empty");
  return spec;
}

std::vector<SweepRow> run_sweep(const std::string& scenario_json_text, const SweepSpec& sweep) {
  json base;
  try {
    base = json::parse(scenario_json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const json::json_pointer pointer{sweep.parameter};
  if (!base.contains(pointer))
    throw ConfigError("sweep parameter path not found: " + sweep.parameter);

  auto run_point = [&base, &pointer](double value) {
    json patched = base;
    patched[pointer] = value;
    const ScenarioConfig cfg = parse_scenario(patched.dump());
    const RunResult run = run_scenario(cfg);
    SweepRow row;
    row.value = value;
    row.v_final = run.summary.v_final;
    const auto& v = run.trajectory.lyapunov;
    const std::size_t half = v.size() / 2;
    double sum = 0.0, sup = 0.0;
    for (std::size_t i = half; i < v.size(); ++i) {
      sum += v[i];
      sup = std::max(sup, v[i]);
    }
    row.mean_tracking_error = v.size() > half ? sum / static_cast<double>(v.size() - half) : 0.0;
    row.sup_tracking_error = sup;
    row.fid_rms_error = fid_rms_error(run.trajectory);
    row.u_max = std::max(std::abs(run.summary.u_min), std::abs(run.summary.u_max));
    return row;
  };

  std::vector<std::future<SweepRow>> futures;
  futures.reserve(sweep.values.size());
  for (double value : sweep.values)
    futures.push_back(std::async(std::launch::async, run_point, value));
  std::vector<SweepRow> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

// -- file I/O ----------------------------------------------------------------

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  const std::size_t m = traj.controls.empty() ? 0 : static_cast<std::size_t>(traj.controls[0].size());
  const std::size_t dim = traj.states.empty() ? 0 : static_cast<std::size_t>(traj.states[0].size());

  out << "t";
  for (std::size_t c = 0; c < m; ++c) out << ",u_" << (c + 1);
  if (!traj.lyapunov.empty()) out << ",V";
  for (std::size_t i = 0; i < dim; ++i) out << ",rho_" << i;
  if (traj.has_desired())
    for (std::size_t i = 0; i < dim; ++i) out << ",rho_d_" << i;
  out << "\n";

  for (std::size_t row = 0; row < traj.samples(); ++row) {
    out << format_double(traj.times[row]);
    for (std::size_t c = 0; c < m; ++c)
      out << "," << format_double(traj.controls[row][static_cast<Eigen::Index>(c)]);
    if (!traj.lyapunov.empty()) out << "," << format_double(traj.lyapunov[row]);
    for (std::size_t i = 0; i < dim; ++i)
      out << "," << format_double(traj.states[row][static_cast<Eigen::Index>(i)]);
    if (traj.has_desired())
      for (std::size_t i = 0; i < dim; ++i)
        out << "," << format_double(traj.desired[row][static_cast<Eigen::Index>(i)]);
    out << "\n";
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

int spins_from_components(std::size_t dim) {
  for (int n = 1; n <= kMaxSpins; ++n)
    if (basis_size(n) == dim) return n;
  throw std::runtime_error("trajectory CSV state width is not 4^n");
}

}  // namespace

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);

  std::size_t controls = 0, states = 0, desired = 0;
  bool has_v = false;
  for (const auto& h : header) {
    if (h.rfind("u_", 0) == 0) ++controls;
    else if (h == "V") has_v = true;
    else if (h.rfind("rho_d_", 0) == 0) ++desired;
    else if (h.rfind("rho_", 0) == 0) ++states;
  }
  if (states == 0) throw std::runtime_error("trajectory CSV has no state columns");

  Trajectory traj;
  traj.n_spins = spins_from_components(states);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw std::runtime_error("ragged trajectory CSV row");
    std::size_t col = 0;
    traj.times.push_back(std::stod(fields[col++]));
    Eigen::VectorXd u(static_cast<Eigen::Index>(controls));
    for (std::size_t c = 0; c < controls; ++c) u[static_cast<Eigen::Index>(c)] = std::stod(fields[col++]);
    if (controls > 0) traj.controls.push_back(std::move(u));
    if (has_v) traj.lyapunov.push_back(std::stod(fields[col++]));
    Eigen::VectorXd x(static_cast<Eigen::Index>(states));
    for (std::size_t i = 0; i < states; ++i) x[static_cast<Eigen::Index>(i)] = std::stod(fields[col++]);
    traj.states.push_back(std::move(x));
    if (desired > 0) {
      Eigen::VectorXd xd(static_cast<Eigen::Index>(desired));
      for (std::size_t i = 0; i < desired; ++i)
        xd[static_cast<Eigen::Index>(i)] = std::stod(fields[col++]);
      traj.desired.push_back(std::move(xd));
    }
  }
  return traj;
}

void write_trace_csv(const std::filesystem::path& path, const ControlTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "t";
  for (int c = 0; c < trace.channels(); ++c) {
    out << ",u_" << (c + 1);
    if (trace.stage_resolved())
      for (int s = 2; s <= 4; ++s) out << ",u_" << (c + 1) << "_s" << s;
  }
  out << "\n";
  for (std::size_t step = 0; step < trace.steps(); ++step) {
    out << format_double(trace.dt() * static_cast<double>(step));
    for (int c = 0; c < trace.channels(); ++c) {
      out << "," << format_double(trace.value(step, 0, c));
      if (trace.stage_resolved())
        for (int s = 1; s < 4; ++s) out << "," << format_double(trace.value(step, s, c));
    }
    out << "\n";
  }
}

ControlTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  int channels = 0;
  bool stages = false;
  for (const auto& h : header) {
    if (h.rfind("u_", 0) == 0 && h.find("_s") == std::string::npos) ++channels;
    if (h.find("_s2") != std::string::npos) stages = true;
  }
  if (channels == 0) throw std::runtime_error("trace CSV has no control columns");

  std::vector<std::vector<double>> rows;
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw std::runtime_error("ragged trace CSV row");
    times.push_back(std::stod(fields[0]));
    std::vector<double> row;
    for (std::size_t i = 1; i < fields.size(); ++i) row.push_back(std::stod(fields[i]));
    rows.push_back(std::move(row));
  }
  if (rows.size() < 1) throw std::runtime_error("trace CSV has no samples");
  const double dt = rows.size() > 1 ? times[1] - times[0] : 1.0;
  ControlTrace trace(dt, channels, stages);
  for (const auto& row : rows) {
    Eigen::VectorXd u1(channels), u2(channels), u3(channels), u4(channels);
    for (int c = 0; c < channels; ++c) {
      if (stages) {
        u1[c] = row[static_cast<std::size_t>(c * 4 + 0)];
        u2[c] = row[static_cast<std::size_t>(c * 4 + 1)];
        u3[c] = row[static_cast<std::size_t>(c * 4 + 2)];
        u4[c] = row[static_cast<std::size_t>(c * 4 + 3)];
      } else {
        u1[c] = row[static_cast<std::size_t>(c)];
      }
    }
    if (stages)
      trace.append_step(u1, u2, u3, u4);
    else
      trace.append_step(u1);
  }
  return trace;
}

void write_sweep_csv(const std::filesystem::path& path, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "parameter,value,v_final,mean_tracking_error,sup_tracking_error,fid_rms_error,u_max\n";
  for (const auto& row : rows) {
    out << spec.parameter << "," << format_double(row.value) << "," << format_double(row.v_final)
        << "," << format_double(row.mean_tracking_error) << ","
        << format_double(row.sup_tracking_error) << "," << format_double(row.fid_rms_error) << ","
        << format_double(row.u_max) << "\n";
  }
}

void write_plot_script(const std::filesystem::path& path) {
  static const char* kScript = R"(#!/usr/bin/env python3
"""Plot a trajectory CSV produced by the spinloop CLI."""
import sys
import csv
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "trajectory.csv"
with open(path) as fh:
    reader = csv.reader(fh)
    header = next(reader)
    rows = [[float(x) for x in row] for row in reader]

cols = {name: [r[i] for r in rows] for i, name in enumerate(header)}
t = cols["t"]
fig, axes = plt.subplots(3, 1, sharex=True, figsize=(9, 9))
for name in header:
    if name.startswith("rho_d_"):
        axes[0].plot(t, cols[name], ":", lw=0.8)
    elif name.startswith("rho_"):
        axes[0].plot(t, cols[name], lw=0.9)
axes[0].set_ylabel("tensor components")
if "V" in cols:
    axes[1].semilogy(t, [max(v, 1e-18) for v in cols["V"]])
    axes[1].set_ylabel("V")
for name in header:
    if name.startswith("u_"):
        axes[2].plot(t, cols[name], label=name)
axes[2].set_ylabel("controls")
axes[2].set_xlabel("t")
axes[2].legend(loc="best", fontsize=8)
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
)";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << kScript;
}

}  // namespace spinloop

// Copyright 2026 The scgame Authors
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

#include "scgame/calibrate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "scgame/drivers.hpp"

namespace scgame {

double normalized_crossing_time(const EpisodeRecord& r) {
  if (!r.arrival || r.samples.empty()) return kCrossingTimeCap;
  const StepSample& first = r.samples.front();
  const double v0 = r.initial_speed_kmh / 3.6;
  const double free_flow = first.av.distance_to_entry() / v0;
  if (!(free_flow > 0.0)) return 1.0;
  double t_entry;
  if (r.arrival->leader == Vehicle::kAv) {
    t_entry = r.arrival->t;
  } else if (r.tta > 0.0) {
    t_entry = r.arrival->t + r.tta;
  } else {
    return kCrossingTimeCap;
  }
  return std::min(kCrossingTimeCap, (t_entry - first.t) / free_flow);
}

namespace {

struct EpisodeScore {
  bool ok = false;
  bool danger = false;
  bool full_stop = false;
  double crossing = 0.0;
};

EpisodeScore score_episode(const ScenarioConfig& cfg) {
  EpisodeScore e;
  try {
    const EpisodeRecord r = run_episode(cfg);
    if (r.classification == Classification::kFailed) return e;
    e.ok = true;
    e.danger = r.classification == Classification::kDanger;
    e.full_stop = r.classification == Classification::kFullStop;
    e.crossing = normalized_crossing_time(r);
  } catch (const Error&) {
    e.ok = false;
  }
  return e;
}

}  // namespace

CalibrationResult calibrate_weights(const ScenarioConfig& base, const CalibrationOptions& opts) {
  if (opts.candidates < 1) throw CalibrationError("need at least one candidate");
  if (opts.budget < 1) throw CalibrationError("budget must be at least 1");

  const std::vector<ScenarioSpec> specs = sample_scenarios(opts.budget, opts.seed, opts.sampler);
  std::mt19937_64 rng(mix_seed(opts.seed, 0x63616c69ULL));

  CalibrationResult result;
  result.candidates.resize(opts.candidates);
  for (CandidateScore& c : result.candidates) {
    c.weights = base.weights;
    c.weights.alpha = 1.0;
    c.weights.beta = uniform(rng, opts.beta_range.first, opts.beta_range.second);
    c.weights.gamma = uniform(rng, opts.gamma_range.first, opts.gamma_range.second);
    c.weights.lambda = uniform(rng, opts.lambda_range.first, opts.lambda_range.second);
  }

  // Flatten (candidate, scenario) pairs so threads share the work evenly.
  const std::size_t total = result.candidates.size() * specs.size();
  std::vector<EpisodeScore> scores(total);
  std::vector<char> candidate_ok(result.candidates.size(), 1);
  std::vector<ScenarioConfig> bases(result.candidates.size(), base);
  for (std::size_t k = 0; k < bases.size(); ++k) {
    bases[k].policy = opts.policy;
    bases[k].weights = result.candidates[k].weights;
    try {
      bases[k].validate();
    } catch (const Error&) {
      candidate_ok[k] = 0;
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      const std::size_t k = i / specs.size();
      if (!candidate_ok[k]) continue;
      scores[i] = score_episode(apply_spec(bases[k], specs[i % specs.size()], opts.sampler));
    }
  };
  const int n_threads = opts.threads > 0
                            ? opts.threads
                            : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  const CalibrationObjective& w = opts.objective;
  for (std::size_t k = 0; k < result.candidates.size(); ++k) {
    CandidateScore& c = result.candidates[k];
    int danger = 0, stops = 0;
    double crossing = 0.0;
    for (std::size_t j = 0; j < specs.size(); ++j) {
      const EpisodeScore& e = scores[k * specs.size() + j];
      if (!e.ok) continue;
      ++c.episodes;
      danger += e.danger;
      stops += e.full_stop;
      crossing += e.crossing;
    }
    c.valid = c.episodes > 0;
    if (!c.valid) continue;
    c.danger_rate = static_cast<double>(danger) / c.episodes;
    c.full_stop_rate = static_cast<double>(stops) / c.episodes;
    c.mean_crossing_time = crossing / c.episodes;
    c.objective = w.w_danger * c.danger_rate + w.w_time * c.mean_crossing_time +
                  w.w_full_stop * c.full_stop_rate;
    if (c.objective < best) {
      best = c.objective;
      result.best_index = k;
      any = true;
    }
  }
  if (!any) throw CalibrationError("every calibration candidate produced invalid episodes");
  result.best = result.candidates[result.best_index].weights;
  return result;
}

std::string calibration_tsv(const CalibrationResult& r, const std::string& header_comment) {
  std::ostringstream out;
  out << "# " << header_comment << "\n";
  out << "candidate\talpha\tbeta\tgamma\tlambda\tvalid\tepisodes\tdanger_rate\tfull_stop_rate"
         "\tcrossing_time\tobjective\tbest\n";
  char buf[256];
  for (std::size_t k = 0; k < r.candidates.size(); ++k) {
    const CandidateScore& c = r.candidates[k];
    std::snprintf(buf, sizeof buf, "%zu\t%.6f\t%.6f\t%.6f\t%.6f\t%d\t%d\t%.6f\t%.6f\t%.6f\t%.6f\t%d\n",
                  k, c.weights.alpha, c.weights.beta, c.weights.gamma, c.weights.lambda,
                  c.valid ? 1 : 0, c.episodes, c.danger_rate, c.full_stop_rate,
                  c.mean_crossing_time, c.objective, k == r.best_index ? 1 : 0);
    out << buf;
  }
  return out.str();
}

}  // namespace scgame

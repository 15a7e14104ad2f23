// Copyright 2026 The entswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entswap/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include <Eigen/Eigenvalues>

#include "entswap/fit.hpp"
#include "entswap/optics.hpp"
#include "entswap/swap.hpp"

namespace entswap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Partial {
  std::vector<ExperimentRecord> records;
  std::size_t violations_upper = 0;
  std::size_t violations_lower = 0;
  std::size_t skipped = 0;
  double max_upper = kNegInf;
  double max_lower = kNegInf;
  double sum = 0, sum_sq = 0;
  std::size_t count = 0;

  void check_upper(double excess, double slack) {
    max_upper = std::max(max_upper, excess);
    if (excess > slack) ++violations_upper;
  }
  void check_lower(double deficit, double slack) {
    max_lower = std::max(max_lower, deficit);
    if (deficit > slack) ++violations_lower;
  }
};

using Clock = std::chrono::steady_clock;

// Runs fn(rng, index, partial) for index in [0, total). Chunk c uses
// RngStream(seed, c) and writes only parts[c].
template <typename PerSample>
std::vector<Partial> run_chunks(std::size_t total, const ExperimentConfig& cfg, PerSample&& fn) {
  const std::size_t chunks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<Partial> parts(chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) break;
        RngStream rng(cfg.seed, c);
        const std::size_t end = std::min(total, (c + 1) * kChunkSize);
        for (std::size_t i = c * kChunkSize; i < end; ++i) fn(rng, i, parts[c]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(chunks);
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, chunks ? chunks : 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return parts;
}

ExperimentResult merge(std::vector<Partial>& parts, std::string name, std::size_t samples,
                       const ExperimentConfig& cfg, Clock::time_point start) {
  ExperimentResult result;
  BoundReport& r = result.report;
  r.experiment = std::move(name);
  r.samples = samples;
  r.seed = cfg.seed;
  double max_upper = kNegInf, max_lower = kNegInf;
  for (auto& p : parts) {
    r.violations_upper += p.violations_upper;
    r.violations_lower += p.violations_lower;
    r.skipped_outcomes += p.skipped;
    max_upper = std::max(max_upper, p.max_upper);
    max_lower = std::max(max_lower, p.max_lower);
    result.records.insert(result.records.end(), std::make_move_iterator(p.records.begin()),
                          std::make_move_iterator(p.records.end()));
  }
  r.max_upper_excess = std::isfinite(max_upper) ? max_upper : 0.0;
  r.max_lower_deficit = std::isfinite(max_lower) ? max_lower : 0.0;
  r.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

void finish_timing(ExperimentResult& result, Clock::time_point start) {
  result.report.runtime_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ExperimentRecord make_record(std::size_t index, const OutcomeBranch<double>& branch, double c_a,
                             double c_b, int rank_a, int rank_b, double rank_tol) {
  ExperimentRecord rec;
  rec.sample_index = index;
  rec.outcome = branch.outcome;
  rec.c_a = c_a;
  rec.c_b = c_b;
  rec.c_f = concurrence(*branch.state);
  rec.probability = branch.probability;
  rec.rank_a = rank_a;
  rec.rank_b = rank_b;
  rec.rank_f = numerical_rank(*branch.state, rank_tol);
  return rec;
}

// Swaps a with b under every outcome, records each possible branch and hands
// it to check(record, partial).
template <typename Check>
void swap_and_record(std::size_t index, const DensityMatrix<double>& a,
                     const DensityMatrix<double>& b, const ExperimentConfig& cfg, Partial& part,
                     Check&& check) {
  const double c_a = concurrence(a), c_b = concurrence(b);
  const int rank_a = numerical_rank(a, cfg.rank_tol), rank_b = numerical_rank(b, cfg.rank_tol);
  for (const auto& branch : swap_all_outcomes(a, b)) {
    if (!branch.state) {
      ++part.skipped;
      continue;
    }
    ExperimentRecord rec = make_record(index, branch, c_a, c_b, rank_a, rank_b, cfg.rank_tol);
    check(rec, part);
    part.records.push_back(rec);
  }
}

void product_axis(const std::vector<ExperimentRecord>& records, std::vector<double>& x,
                  std::vector<double>& y) {
  x.clear();
  y.clear();
  x.reserve(records.size());
  y.reserve(records.size());
  for (const auto& r : records) {
    x.push_back(r.c_a * r.c_b);
    y.push_back(r.c_f);
  }
}

}  // namespace

std::optional<Ensemble> Ensemble::parse(std::string_view name) {
  if (name == "bures") return Ensemble{EnsembleKind::Bures, 4};
  if (name == "pure") return Ensemble{EnsembleKind::Pure, 1};
  if (name == "hs") return Ensemble{EnsembleKind::Induced, 4};
  constexpr std::string_view prefix = "induced-";
  if (name.starts_with(prefix) && name.size() == prefix.size() + 1) {
    const char k = name.back();
    if (k >= '1' && k <= '4') return Ensemble{EnsembleKind::Induced, k - '0'};
  }
  return std::nullopt;
}

std::string Ensemble::name() const {
  switch (kind) {
    case EnsembleKind::Bures: return "bures";
    case EnsembleKind::Pure: return "pure";
    case EnsembleKind::Induced: return "induced-" + std::to_string(rank);
  }
  return "?";
}

DensityMatrix<double> Ensemble::draw(RngStream& rng) const {
  switch (kind) {
    case EnsembleKind::Bures: return random_bures<double>(rng);
    case EnsembleKind::Pure: return random_pure<double>(rng).density();
    case EnsembleKind::Induced: return random_induced<double>(rng, 4, rank);
  }
  throw std::logic_error("unknown ensemble");
}

double ExperimentRecord::concurrence_ratio() const {
  const double lo = std::min(c_a, c_b), hi = std::max(c_a, c_b);
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

bool BoundReport::failed(bool strict) const {
  if (violations_upper > 0) return true;
  if (violations_lower > 0 && (!lower_bound_empirical || strict)) return true;
  return false;
}

ExperimentResult run_conservation(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  const DensityMatrix<double> bell = bell_state<double>(BellLabel::PhiPlus);
  auto parts = run_chunks(cfg.samples, cfg, [&](RngStream& rng, std::size_t i, Partial& part) {
    const DensityMatrix<double> rho = cfg.ensemble.draw(rng);
    swap_and_record(i, rho, bell, cfg, part, [](const ExperimentRecord& rec, Partial& p) {
      p.check_upper(rec.c_f - rec.c_a, kAnalyticSlack);
      p.check_lower(rec.c_a - rec.c_f, kAnalyticSlack);
    });
  });
  auto result = merge(parts, "conserve", cfg.samples, cfg, start);
  result.report.metrics["max_abs_deviation"] =
      std::max(result.report.max_upper_excess, result.report.max_lower_deficit);
  return result;
}

ExperimentResult run_belldiag_bounds(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  auto parts = run_chunks(cfg.samples, cfg, [&](RngStream& rng, std::size_t i, Partial& part) {
    const DensityMatrix<double> a = random_bell_diagonal<double>(rng).density();
    const DensityMatrix<double> b = random_bell_diagonal<double>(rng).density();
    swap_and_record(i, a, b, cfg, part, [](const ExperimentRecord& rec, Partial& p) {
      const double x = rec.c_a * rec.c_b;
      p.check_upper(rec.c_f - x, kAnalyticSlack);
      p.check_lower(std::max(0.0, 1.25 * x - 0.25) - rec.c_f, kEmpiricalSlack);
    });
  });
  auto result = merge(parts, "belldiag", cfg.samples, cfg, start);
  result.report.lower_bound_empirical = true;

  std::vector<double> x, y;
  product_axis(result.records, x, y);
  auto envelope = lower_envelope(x, y, 50);
  std::erase_if(envelope, [](const EnvelopePoint& p) { return p.y <= 1e-9; });
  if (envelope.size() >= 2) result.report.fit_params = fit_line(envelope);
  finish_timing(result, start);
  return result;
}

ExperimentResult run_pure_bounds(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  auto parts = run_chunks(cfg.samples, cfg, [&](RngStream& rng, std::size_t i, Partial& part) {
    const DensityMatrix<double> a = random_pure<double>(rng).density();
    const DensityMatrix<double> b = random_pure<double>(rng).density();
    swap_and_record(i, a, b, cfg, part, [](const ExperimentRecord& rec, Partial& p) {
      const double x = rec.c_a * rec.c_b;
      // No upper bound holds here; the excess over C_A C_B is informational.
      p.max_upper = std::max(p.max_upper, rec.c_f - x);
      p.check_lower(x * x - rec.c_f, kAnalyticSlack);
    });
  });
  auto result = merge(parts, "pure", cfg.samples, cfg, start);

  std::vector<double> x, y;
  product_axis(result.records, x, y);
  std::size_t above = 0;
  for (std::size_t i = 0; i < x.size(); ++i) above += y[i] > x[i];
  if (!x.empty()) {
    result.report.metrics["fraction_above_product"] = static_cast<double>(above) / x.size();
  }
  const auto envelope = lower_envelope(x, y, 50);
  if (envelope.size() >= 3) result.report.fit_params = fit_exponential(envelope);
  finish_timing(result, start);
  return result;
}

ExperimentResult run_rank_relation(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  const std::size_t per_pair = cfg.samples;
  auto parts = run_chunks(16 * per_pair, cfg, [&](RngStream& rng, std::size_t i, Partial& part) {
    const std::size_t pair = i / per_pair;
    const int k1 = static_cast<int>(pair / 4) + 1;
    const int k2 = static_cast<int>(pair % 4) + 1;
    const DensityMatrix<double> a = random_induced<double>(rng, 4, k1);
    const DensityMatrix<double> b = random_induced<double>(rng, 4, k2);
    swap_and_record(i, a, b, cfg, part, [k1, k2](const ExperimentRecord& rec, Partial& p) {
      const int expected = std::max(k1, k2);
      p.check_lower(static_cast<double>(expected - rec.rank_f), 0.0);
      if (std::min(k1, k2) == 1) {
        p.check_upper(std::abs(static_cast<double>(rec.rank_f - expected)), 0.0);
      }
    });
  });
  auto result = merge(parts, "rank", 16 * per_pair, cfg, start);

  std::map<std::pair<int, int>, std::pair<int, int>> span;  // (k1,k2) -> (min R_F, max R_F)
  for (const auto& r : result.records) {
    const std::pair<int, int> key{r.sample_index / per_pair / 4 + 1,
                                  r.sample_index / per_pair % 4 + 1};
    auto [it, inserted] = span.try_emplace(key, r.rank_f, r.rank_f);
    if (!inserted) {
      it->second.first = std::min(it->second.first, r.rank_f);
      it->second.second = std::max(it->second.second, r.rank_f);
    }
  }
  for (const auto& [key, range] : span) {
    const std::string tag = std::to_string(key.first) + "," + std::to_string(key.second);
    result.report.metrics["min_rank_f[" + tag + "]"] = range.first;
    result.report.metrics["max_rank_f[" + tag + "]"] = range.second;
  }
  finish_timing(result, start);
  return result;
}

ExperimentResult run_oracle_equiv(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  const BeamsplitterBsm<double> bsm(0.5);
  auto parts = run_chunks(cfg.samples, cfg, [&](RngStream& rng, std::size_t i, Partial& part) {
    const DensityMatrix<double> a = random_bures<double>(rng);
    const DensityMatrix<double> b = random_bures<double>(rng);
    SwapResult<double> analytic = swap_general(a, b, BellLabel::PsiMinus);
    SwapResult<double> optical = bsm.swap(a, b);
    part.check_upper(trace_distance(analytic.state, optical.state), kOracleTolerance);
    part.check_lower(std::abs(analytic.probability - optical.probability), kOracleTolerance);

    ExperimentRecord rec;
    rec.sample_index = i;
    rec.outcome = BellLabel::PsiMinus;
    rec.c_a = concurrence(a);
    rec.c_b = concurrence(b);
    rec.c_f = concurrence(analytic.state);
    rec.probability = analytic.probability;
    rec.rank_a = numerical_rank(a, cfg.rank_tol);
    rec.rank_b = numerical_rank(b, cfg.rank_tol);
    rec.rank_f = numerical_rank(analytic.state, cfg.rank_tol);
    part.records.push_back(rec);
  });
  auto result = merge(parts, "oracle-equiv", cfg.samples, cfg, start);
  result.report.metrics["max_trace_distance"] = result.report.max_upper_excess;
  result.report.metrics["max_probability_gap"] = result.report.max_lower_deficit;
  return result;
}

ExperimentResult run_rank2_selfswap(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  constexpr std::size_t kGrid = 99;
  auto parts = run_chunks(kGrid, cfg, [&](RngStream&, std::size_t i, Partial& part) {
    const double alpha = static_cast<double>(i + 1) / 100.0;
    BellDiagonalParams<double> params;
    params.alpha = alpha;
    params.beta = 1.0 - alpha;
    const DensityMatrix<double> sigma = params.density();
    const double expected = (params.alpha - params.beta) * (params.alpha - params.beta);
    swap_and_record(i, sigma, sigma, cfg, part, [expected](const ExperimentRecord& rec, Partial& p) {
      p.check_upper(rec.c_f - expected, kSelfSwapTolerance);
      p.check_lower(expected - rec.c_f, kSelfSwapTolerance);
    });
  });
  return merge(parts, "rank2-selfswap", kGrid, cfg, start);
}

ExperimentResult run_haar_stats(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  auto parts = run_chunks(cfg.samples, cfg, [&](RngStream& rng, std::size_t, Partial& part) {
    const ComplexMatrix<double> u = haar_unitary<double>(rng, 4);
    Eigen::ComplexEigenSolver<ComplexMatrix<double>> solver(u, false);
    for (const auto& ev : solver.eigenvalues()) {
      const double phase = std::arg(ev);
      part.sum += phase;
      part.sum_sq += phase * phase;
      ++part.count;
    }
  });
  double sum = 0, sum_sq = 0;
  std::size_t count = 0;
  for (const auto& p : parts) {
    sum += p.sum;
    sum_sq += p.sum_sq;
    count += p.count;
  }
  auto result = merge(parts, "haar-stats", cfg.samples, cfg, start);
  const double mean = count ? sum / count : 0.0;
  const double std_dev = count ? std::sqrt(std::max(0.0, sum_sq / count - mean * mean)) : 0.0;
  const double target = std::numbers::pi / std::sqrt(3.0);
  auto& r = result.report;
  r.metrics["phase_mean"] = mean;
  r.metrics["phase_std"] = std_dev;
  r.metrics["target_std"] = target;
  r.max_upper_excess = std::abs(mean);
  r.max_lower_deficit = std::abs(std_dev - target);
  r.violations_upper = r.max_upper_excess > kHaarPhaseTolerance ? 1 : 0;
  r.violations_lower = r.max_lower_deficit > kHaarPhaseTolerance ? 1 : 0;
  return result;
}

std::vector<std::string> experiment_names() {
  return {"conserve", "belldiag", "pure", "rank", "rank2-selfswap", "oracle-equiv", "haar-stats"};
}

std::optional<ExperimentResult> run_experiment(std::string_view name, const ExperimentConfig& cfg) {
  if (name == "conserve") return run_conservation(cfg);
  if (name == "belldiag") return run_belldiag_bounds(cfg);
  if (name == "pure") return run_pure_bounds(cfg);
  if (name == "rank") return run_rank_relation(cfg);
  if (name == "rank2-selfswap") return run_rank2_selfswap(cfg);
  if (name == "oracle-equiv") return run_oracle_equiv(cfg);
  if (name == "haar-stats") return run_haar_stats(cfg);
  return std::nullopt;
}

}  // namespace entswap

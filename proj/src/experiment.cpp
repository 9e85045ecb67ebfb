#include "roguewave/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <new>
#include <optional>
#include <string>
#include <thread>

#include "roguewave/errors.hpp"
#include "roguewave/field.hpp"

#ifndef ROGUEWAVE_VERSION
#define ROGUEWAVE_VERSION "unknown"
#endif

namespace roguewave {

namespace {

// Realizations per work item. Fixed so the merge tree never depends on the
// number of workers.
constexpr std::size_t kChunk = 16;

unsigned resolve_workers(unsigned requested, std::size_t items) {
  unsigned w = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(items, 1)));
}

template <typename Fn>
void parallel_for(std::size_t items, unsigned workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};

  auto body = [&] {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= items) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock{failure_mutex};
        if (!failure) failure = std::current_exception();
        stop = true;
      }
    }
  };

  if (workers <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
  }
  if (failure) std::rethrow_exception(failure);
}

struct ChunkPartial {
  RunningMoments pooled;
  std::vector<RunningMoments> per_beta;
};

void fill_phases_for(const ExperimentConfig& config, const CorrelationSpec& spec,
                     std::size_t rho_index, std::size_t realization, std::span<double> out) {
  RandomStream rng{config.master_seed, rho_index, realization};
  fill_correlated_phases(out, config.dist, spec, config.shuffle, rng);
}

RhoResult run_one_rho(const ExperimentConfig& config, const IntensityKernel& kernel,
                      std::size_t rho_index, std::vector<double>& samples) {
  const std::size_t n = config.n_waves;
  const std::size_t nb = kernel.n_beta();
  const std::size_t runs = config.n_runs;
  const std::size_t chunks = (runs + kChunk - 1) / kChunk;
  const CorrelationSpec spec{config.rho_list[rho_index]};

  std::vector<ChunkPartial> partials(chunks);
  parallel_for(chunks, resolve_workers(config.workers, chunks), [&](std::size_t c) {
    const std::size_t first = c * kChunk;
    const std::size_t count = std::min(kChunk, runs - first);
    std::vector<double> phases(count * n);
    for (std::size_t r = 0; r < count; ++r) {
      fill_phases_for(config, spec, rho_index, first + r,
                      std::span<double>{phases}.subspan(r * n, n));
    }
    std::span<double> rows{samples.data() + first * nb, count * nb};
    kernel.evaluate(phases, rows);

    ChunkPartial& part = partials[c];
    part.per_beta.assign(nb, RunningMoments{});
    for (std::size_t r = 0; r < count; ++r) {
      for (std::size_t k = 0; k < nb; ++k) {
        const double x = rows[r * nb + k];
        part.per_beta[k].add(x);
        part.pooled.add(x);
      }
    }
  });

  RhoResult result;
  result.rho = spec.rho();
  result.per_beta.assign(nb, RunningMoments{});
  for (const auto& part : partials) {
    result.pooled.merge(part.pooled);
    for (std::size_t k = 0; k < nb; ++k) result.per_beta[k].merge(part.per_beta[k]);
  }
  result.histogram = build_histogram(samples, result.pooled.mean(), config.bins);
  if (config.keep_samples) result.samples = samples;
  return result;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& msg) {
    throw ArgumentError(key + ": " + msg);
  };
  if (n_waves == 0) fail("n_waves", "must be at least 1");
  if (n_runs == 0) fail("n_runs", "must be at least 1");
  if (n_beta < 2) fail("n_beta", "must be at least 2");
  if (rho_list.empty()) fail("rho", "at least one correlation value is required");
  bool any_nonzero = false;
  for (const double rho : rho_list) {
    if (!std::isfinite(rho) || rho < 0.0 || rho > 1.0) {
      fail("rho", "values must lie in [0, 1], got " + std::to_string(rho));
    }
    any_nonzero = any_nonzero || rho != 0.0;
  }
  if (any_nonzero && n_waves % 2 != 0) fail("n_waves", "must be even when any rho != 0");
  if (!(e0 > 0.0) || !std::isfinite(e0)) fail("e0", "must be positive");
  try {
    bins.validate();
  } catch (const ArgumentError& e) {
    fail("bins", e.what());
  }
}

BetaGrid beta_grid(std::size_t n_beta) {
  if (n_beta < 2) {
    throw ArgumentError("beta_grid: n_beta must be at least 2");
  }
  BetaGrid grid;
  grid.spacing = (kBetaMax - kBetaMin) / static_cast<double>(n_beta - 1);
  grid.values.resize(n_beta);
  for (std::size_t k = 0; k < n_beta; ++k) {
    grid.values[k] = kBetaMin + static_cast<double>(k) * grid.spacing;
  }
  grid.values.back() = kBetaMax;
  return grid;
}

std::vector<double> intensity_pattern(std::span<const double> phases,
                                      std::span<const double> betas, double e0) {
  const IntensityKernel kernel{betas, phases.size(), e0};
  std::vector<double> out(betas.size());
  kernel.evaluate(phases, out);
  return out;
}

std::vector<double> run_realization(const ExperimentConfig& config, std::size_t rho_index,
                                    std::size_t realization) {
  config.validate();
  if (rho_index >= config.rho_list.size()) {
    throw ArgumentError("run_realization: rho index out of range");
  }
  const CorrelationSpec spec{config.rho_list[rho_index]};
  std::vector<double> phases(config.n_waves);
  fill_phases_for(config, spec, rho_index, realization, phases);
  return intensity_pattern(phases, beta_grid(config.n_beta).values, config.e0);
}

std::vector<double> RhoResult::mean_curve() const {
  std::vector<double> out(per_beta.size());
  std::transform(per_beta.begin(), per_beta.end(), out.begin(),
                 [](const RunningMoments& m) { return m.mean(); });
  return out;
}

std::vector<double> RhoResult::stderr_curve() const {
  std::vector<double> out(per_beta.size());
  std::transform(per_beta.begin(), per_beta.end(), out.begin(),
                 [](const RunningMoments& m) { return m.standard_error().value_or(0.0); });
  return out;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  try {
    SweepResult result;
    result.config = config;
    result.version = version_string();
    result.grid = beta_grid(config.n_beta);
    const IntensityKernel kernel{result.grid.values, config.n_waves, config.e0};

    std::vector<double> samples(config.n_runs * config.n_beta);
    for (std::size_t i = 0; i < config.rho_list.size(); ++i) {
      result.rhos.push_back(run_one_rho(config, kernel, i, samples));
    }

    std::optional<double> baseline;
    for (const auto& r : result.rhos) {
      if (r.rho == 0.0) {
        baseline = r.pooled.stddev();
        break;
      }
    }
    for (auto& r : result.rhos) {
      r.metrics = rogue_level(r.pooled, baseline, r.rho);
    }
    return result;
  } catch (const std::bad_alloc&) {
    throw ResourceError("run_sweep: out of memory for n_runs x n_beta working set");
  }
}

std::vector<NBetaRun> nbeta_study(const ExperimentConfig& config,
                                  std::span<const std::size_t> n_beta_list) {
  if (n_beta_list.empty()) {
    throw ArgumentError("nbeta_study: empty grid-size list");
  }
  for (const auto nb : n_beta_list) {
    if (nb < 2) throw ArgumentError("n_beta: must be at least 2");
  }
  std::vector<NBetaRun> out;
  out.reserve(n_beta_list.size());
  for (const auto nb : n_beta_list) {
    ExperimentConfig c = config;
    c.n_beta = nb;
    out.push_back({nb, run_sweep(c)});
  }
  return out;
}

const char* version_string() noexcept { return ROGUEWAVE_VERSION; }

}  // namespace roguewave

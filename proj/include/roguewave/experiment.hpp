#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "roguewave/phases.hpp"
#include "roguewave/stats.hpp"

namespace roguewave {

inline constexpr double kBetaMin = 0.0;
inline constexpr double kBetaMax = 2.0 * std::numbers::pi;

// One seedable sweep over correlation values. Defaults reproduce the
// reference setup: 1024 waves, 10^4 realizations, 300 beta points in
// [0, 2 pi], shuffled continuous-uniform phases.
struct ExperimentConfig {
  std::size_t n_waves = 1024;
  std::size_t n_runs = 10000;
  std::size_t n_beta = 300;
  std::vector<double> rho_list{0.0, 0.25, 0.5, 0.75, 1.0};
  PhaseDistribution dist = PhaseDistribution::continuous();
  bool shuffle = true;
  double e0 = 1.0;
  std::uint64_t master_seed = 20200406;
  BinSpec bins{};

  // Execution knobs; they never change results.
  unsigned workers = 0;  // 0 = hardware concurrency
  bool keep_samples = false;

  // Throws ArgumentError naming the offending field.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct BetaGrid {
  std::vector<double> values;
  double spacing = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

// n_beta points over [0, 2 pi] with both endpoints, spacing 2 pi / (n_beta - 1).
BetaGrid beta_grid(std::size_t n_beta);

// Intensities of one phase vector at every beta.
std::vector<double> intensity_pattern(std::span<const double> phases,
                                      std::span<const double> betas, double e0 = 1.0);

// One realization for config.rho_list[rho_index]: draws the phase vector from
// the stream (master_seed, rho_index, realization) and evaluates it over the
// beta grid. Returns n_beta intensities.
std::vector<double> run_realization(const ExperimentConfig& config, std::size_t rho_index,
                                    std::size_t realization);

struct RhoResult {
  double rho = 0.0;
  RunningMoments pooled;               // all (realization, beta) samples
  std::vector<RunningMoments> per_beta;
  Histogram histogram;                 // of I / pooled mean
  RogueMetrics metrics;
  // Raw intensities, n_runs x n_beta row-major; filled only with keep_samples.
  std::vector<double> samples;

  [[nodiscard]] std::vector<double> mean_curve() const;
  [[nodiscard]] std::vector<double> stderr_curve() const;
};

struct SweepResult {
  ExperimentConfig config;
  BetaGrid grid;
  std::vector<RhoResult> rhos;
  std::string version;
};

// Runs every rho in the config. Realizations are processed in fixed-size
// chunks whose partial results merge in chunk order, so the output is
// bit-identical for any worker count.
SweepResult run_sweep(const ExperimentConfig& config);

struct NBetaRun {
  std::size_t n_beta;
  SweepResult sweep;
};

// run_sweep at each grid size with everything else unchanged.
std::vector<NBetaRun> nbeta_study(const ExperimentConfig& config,
                                  std::span<const std::size_t> n_beta_list);

const char* version_string() noexcept;

}  // namespace roguewave

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace roguewave {

// Single-pass count/mean/M2/min/max accumulator (Welford), mergeable with
// the Chan et al. pairwise formula.
class RunningMoments {
 public:
  // Throws DataError for non-finite x.
  void add(double x);
  void merge(const RunningMoments& other) noexcept;

  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] bool empty() const noexcept { return count_ == 0; }
  [[nodiscard]] double mean() const noexcept { return mean_; }
  [[nodiscard]] double m2() const noexcept { return m2_; }
  [[nodiscard]] double min() const noexcept { return min_; }
  [[nodiscard]] double max() const noexcept { return max_; }

  // Sample variance (divisor count - 1); empty below two samples.
  [[nodiscard]] std::optional<double> variance() const noexcept;
  [[nodiscard]] std::optional<double> stddev() const noexcept;
  // stddev / sqrt(count)
  [[nodiscard]] std::optional<double> standard_error() const noexcept;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

RunningMoments update_moments(RunningMoments state, double x);
RunningMoments merge_moments(RunningMoments a, const RunningMoments& b) noexcept;

// Fixed-width bins on the normalized axis u = I / <I>.
struct BinSpec {
  double lower = 0.0;
  double upper = 64.0;
  double width = 0.25;

  // Throws ArgumentError unless width > 0 and (upper - lower) spans a whole
  // number of bins.
  void validate() const;
  [[nodiscard]] std::size_t bin_count() const;
  friend bool operator==(const BinSpec&, const BinSpec&) = default;
};

class Histogram {
 public:
  explicit Histogram(const BinSpec& spec = {});

  void add(double u) noexcept;
  // Both histograms must share the same bin spec.
  void merge(const Histogram& other);

  [[nodiscard]] const BinSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] const std::vector<double>& bin_edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  [[nodiscard]] std::size_t size() const noexcept { return counts_.size(); }
  [[nodiscard]] std::uint64_t total() const noexcept { return total_; }
  [[nodiscard]] std::uint64_t underflow() const noexcept { return underflow_; }
  [[nodiscard]] std::uint64_t overflow() const noexcept { return overflow_; }

  // counts[i] / (total * width_i); zero for an empty histogram.
  [[nodiscard]] double density(std::size_t i) const noexcept;
  [[nodiscard]] std::vector<double> densities() const;

 private:
  BinSpec spec_;
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
};

// Histogram of samples / normalization. Throws ArgumentError unless
// normalization > 0.
Histogram build_histogram(std::span<const double> samples, double normalization,
                          const BinSpec& spec = {});

// Sample Pearson correlation. Throws ArgumentError on length mismatch or fewer
// than two points, DegenerateInputError when either variance is zero.
double pearson(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation (average ranks for ties).
double spearman(std::span<const double> x, std::span<const double> y);

struct RogueMetrics {
  double rho = 0.0;
  double eta = 0.0;                // (i_max - mean) / sigma
  std::optional<double> eta_base;  // same numerator over the rho = 0 sigma
  double i_max = 0.0;
  double mean = 0.0;
  double sigma = 0.0;
};

// Rogue-wave level of a pooled intensity sample. Throws DegenerateInputError
// for fewer than two samples or a zero spread (in either sigma).
RogueMetrics rogue_level(const RunningMoments& moments,
                         std::optional<double> baseline_sigma = std::nullopt, double rho = 0.0);

// Fraction of samples strictly greater than threshold.
double survival(std::span<const double> samples, double threshold);

// sup |F_n(u) - (1 - exp(-u))| for the empirical CDF of samples.
double ks_distance_exponential(std::span<const double> samples);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace roguewave

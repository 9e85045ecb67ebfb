#include "roguewave/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "roguewave/errors.hpp"

namespace roguewave {

void RunningMoments::add(double x) {
  if (!std::isfinite(x)) {
    throw DataError("RunningMoments: non-finite sample");
  }
  ++count_;
  if (count_ == 1) {
    mean_ = x;
    m2_ = 0.0;
    min_ = x;
    max_ = x;
    return;
  }
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
  min_ = std::min(min_, x);
  max_ = std::max(max_, x);
}

void RunningMoments::merge(const RunningMoments& other) noexcept {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * (nb / n);
  m2_ += other.m2_ + delta * delta * (na * nb / n);
  count_ += other.count_;
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
}

std::optional<double> RunningMoments::variance() const noexcept {
  if (count_ < 2) return std::nullopt;
  return m2_ / static_cast<double>(count_ - 1);
}

std::optional<double> RunningMoments::stddev() const noexcept {
  const auto v = variance();
  if (!v) return std::nullopt;
  return std::sqrt(*v);
}

std::optional<double> RunningMoments::standard_error() const noexcept {
  const auto s = stddev();
  if (!s) return std::nullopt;
  return *s / std::sqrt(static_cast<double>(count_));
}

RunningMoments update_moments(RunningMoments state, double x) {
  state.add(x);
  return state;
}

RunningMoments merge_moments(RunningMoments a, const RunningMoments& b) noexcept {
  a.merge(b);
  return a;
}

void BinSpec::validate() const {
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(lower) ||
      !std::isfinite(upper) || !(upper > lower)) {
    throw ArgumentError("bin spec needs finite lower < upper and width > 0");
  }
  const double span = upper - lower;
  const double bins = std::round(span / width);
  if (bins < 1.0 || std::abs(bins * width - span) > 1e-9 * span) {
    throw ArgumentError("bin spec range must be a whole number of bins");
  }
}

std::size_t BinSpec::bin_count() const {
  validate();
  return static_cast<std::size_t>(std::round((upper - lower) / width));
}

Histogram::Histogram(const BinSpec& spec) : spec_(spec) {
  const std::size_t bins = spec_.bin_count();
  counts_.assign(bins, 0);
  edges_.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges_[i] = spec_.lower + static_cast<double>(i) * spec_.width;
  }
  edges_.back() = spec_.upper;
}

void Histogram::add(double u) noexcept {
  ++total_;
  if (u < spec_.lower) {
    ++underflow_;
    return;
  }
  if (!(u < spec_.upper)) {
    ++overflow_;
    return;
  }
  auto idx = static_cast<std::size_t>((u - spec_.lower) / spec_.width);
  // Rounding can push a value sitting on an edge one bin off.
  if (idx >= counts_.size()) idx = counts_.size() - 1;
  if (u < edges_[idx]) --idx;
  else if (u >= edges_[idx + 1] && idx + 1 < counts_.size()) ++idx;
  ++counts_[idx];
}

void Histogram::merge(const Histogram& other) {
  if (!(spec_ == other.spec_)) {
    throw ArgumentError("Histogram::merge: bin specs differ");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += other.counts_[i];
  }
  total_ += other.total_;
  underflow_ += other.underflow_;
  overflow_ += other.overflow_;
}

double Histogram::density(std::size_t i) const noexcept {
  if (total_ == 0) return 0.0;
  const double width = edges_[i + 1] - edges_[i];
  return static_cast<double>(counts_[i]) / (static_cast<double>(total_) * width);
}

std::vector<double> Histogram::densities() const {
  std::vector<double> out(counts_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = density(i);
  return out;
}

Histogram build_histogram(std::span<const double> samples, double normalization,
                          const BinSpec& spec) {
  if (!(normalization > 0.0) || !std::isfinite(normalization)) {
    throw ArgumentError("build_histogram: normalization must be positive");
  }
  Histogram h{spec};
  const double inv = 1.0 / normalization;
  for (const double x : samples) {
    h.add(x * inv);
  }
  return h;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ArgumentError("pearson: samples differ in length");
  }
  if (x.size() < 2) {
    throw ArgumentError("pearson: need at least two points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DegenerateInputError("pearson: zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ArgumentError("spearman: samples differ in length");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

RogueMetrics rogue_level(const RunningMoments& moments, std::optional<double> baseline_sigma,
                         double rho) {
  const auto sigma = moments.stddev();
  if (!sigma) {
    throw DegenerateInputError("rogue_level: need at least two samples");
  }
  if (!(*sigma > 0.0)) {
    throw DegenerateInputError("rogue_level: zero spread");
  }
  RogueMetrics m;
  m.rho = rho;
  m.i_max = moments.max();
  m.mean = moments.mean();
  m.sigma = *sigma;
  m.eta = (m.i_max - m.mean) / m.sigma;
  if (baseline_sigma) {
    if (!(*baseline_sigma > 0.0)) {
      throw DegenerateInputError("rogue_level: baseline sigma must be positive");
    }
    m.eta_base = (m.i_max - m.mean) / *baseline_sigma;
  }
  return m;
}

double survival(std::span<const double> samples, double threshold) {
  if (samples.empty()) {
    throw ArgumentError("survival: empty sample");
  }
  const auto above = std::count_if(samples.begin(), samples.end(),
                                   [threshold](double v) { return v > threshold; });
  return static_cast<double>(above) / static_cast<double>(samples.size());
}

double ks_distance_exponential(std::span<const double> samples) {
  if (samples.empty()) {
    throw ArgumentError("ks_distance_exponential: empty sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = sorted[i] > 0.0 ? -std::expm1(-sorted[i]) : 0.0;
    const double below = static_cast<double>(i) / n;
    const double upto = static_cast<double>(i + 1) / n;
    d = std::max({d, std::abs(upto - cdf), std::abs(cdf - below)});
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw ArgumentError("ks_two_sample: empty sample");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace roguewave

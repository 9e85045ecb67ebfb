#include "roguewave/phases.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "roguewave/errors.hpp"

namespace roguewave {

PhaseDistribution PhaseDistribution::discrete(int q) {
  if (q < 2) {
    throw ArgumentError("discrete phase law needs q >= 2, got " + std::to_string(q));
  }
  return PhaseDistribution{PhaseLaw::DiscreteQ, q};
}

double PhaseDistribution::level(int k) const {
  if (kind_ != PhaseLaw::DiscreteQ || k < 0 || k >= q_) {
    throw ArgumentError("phase level index out of range");
  }
  return (2.0 * k / (q_ - 1) - 1.0) * std::numbers::pi;
}

double PhaseDistribution::draw(RandomStream& rng) const {
  const double u = rng.uniform01();
  if (kind_ == PhaseLaw::ContinuousUniform) {
    return (2.0 * u - 1.0) * std::numbers::pi;
  }
  const int k = std::min(q_ - 1, static_cast<int>(u * q_));
  return (2.0 * k / (q_ - 1) - 1.0) * std::numbers::pi;
}

CorrelationSpec::CorrelationSpec(double rho) : rho_(rho), theta_(mixing_angle(rho)) {
  sin_ = std::sin(theta_);
  cos_ = std::cos(theta_);
  // sin and cos of pi/4 round one ulp apart; full correlation needs equal weights
  if (std::abs(rho) == 1.0) {
    cos_ = std::sqrt(0.5);
    sin_ = std::copysign(cos_, rho);
  }
}

double mixing_angle(double rho) {
  if (!std::isfinite(rho) || std::abs(rho) > 1.0) {
    throw DomainError("correlation must lie in [-1, 1], got " + std::to_string(rho));
  }
  return 0.5 * std::asin(rho);
}

PhaseVector sample_iid(const PhaseDistribution& dist, std::size_t n, RandomStream& rng) {
  if (n == 0) {
    throw ArgumentError("sample_iid: n must be at least 1");
  }
  PhaseVector out;
  out.values.resize(n);
  for (auto& v : out.values) {
    v = dist.draw(rng);
  }
  return out;
}

void fill_correlated_phases(std::span<double> out, const PhaseDistribution& dist,
                            const CorrelationSpec& spec, bool shuffle, RandomStream& rng) {
  const std::size_t n = out.size();
  if (n == 0) {
    throw ArgumentError("correlated phases: n must be at least 1");
  }
  if (n % 2 != 0 && spec.rho() != 0.0) {
    throw ArgumentError("correlated phases: n must be even when rho != 0, got " +
                        std::to_string(n));
  }
  for (auto& v : out) {
    v = dist.draw(rng);
  }
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    std::tie(out[i], out[i + 1]) = correlate_pair(out[i], out[i + 1], spec);
  }
  if (shuffle) {
    std::shuffle(out.begin(), out.end(), rng);
  }
}

PhaseVector make_correlated_phases(const PhaseDistribution& dist, double rho, std::size_t n,
                                   bool shuffle, RandomStream& rng) {
  const CorrelationSpec spec{rho};
  PhaseVector out;
  out.values.resize(n);
  fill_correlated_phases(out.values, dist, spec, shuffle, rng);
  out.rho_used = rho;
  out.shuffled = shuffle;
  return out;
}

PhaseMoments theoretical_moments(const PhaseDistribution& dist) noexcept {
  constexpr double base = std::numbers::pi * std::numbers::pi / 3.0;
  if (!dist.is_discrete()) {
    return {0.0, base};
  }
  const double q = dist.q();
  return {0.0, base * (q + 1.0) / (q - 1.0)};
}

FourierCoefficients fourier_coeffs(const PhaseDistribution& dist) noexcept {
  if (!dist.is_discrete()) {
    return {0.0, 0.0};
  }
  // cos(phi_k) = -cos(2 pi k / (q - 1)); over k = 0..q-2 the roots of unity
  // cancel, leaving only the k = q-1 term. For q = 2 both levels sit at +-pi.
  const int q = dist.q();
  if (q == 2) {
    return {-1.0, 0.0};
  }
  return {-1.0 / q, 0.0};
}

}  // namespace roguewave

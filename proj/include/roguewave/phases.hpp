#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "roguewave/rng.hpp"

namespace roguewave {

enum class PhaseLaw { ContinuousUniform, DiscreteQ };

// Law of the independent source phases.
//
// ContinuousUniform is uniform on [-pi, pi]. DiscreteQ(q) takes the q
// equiprobable levels (2k/(q-1) - 1) * pi, k = 0..q-1, which tend to the
// continuous law as q grows. Both have mean zero.
class PhaseDistribution {
 public:
  static PhaseDistribution continuous() { return PhaseDistribution{}; }

  // Throws ArgumentError for q < 2. Even q is legal but flagged.
  static PhaseDistribution discrete(int q);

  [[nodiscard]] PhaseLaw kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_discrete() const noexcept { return kind_ == PhaseLaw::DiscreteQ; }

  // Number of states; 0 for the continuous law.
  [[nodiscard]] int q() const noexcept { return q_; }

  // Even q has no level at zero and is outside the odd-q family the model was
  // built for. The formulas still hold, so this is a warning, not an error.
  [[nodiscard]] bool even_q_flagged() const noexcept {
    return kind_ == PhaseLaw::DiscreteQ && q_ % 2 == 0;
  }

  // Phase level k of the discrete law.
  [[nodiscard]] double level(int k) const;

  // Draw one phase.
  double draw(RandomStream& rng) const;

  friend bool operator==(const PhaseDistribution&, const PhaseDistribution&) = default;

 private:
  PhaseDistribution() = default;
  PhaseDistribution(PhaseLaw kind, int q) : kind_(kind), q_(q) {}

  PhaseLaw kind_ = PhaseLaw::ContinuousUniform;
  int q_ = 0;
};

// Target pair correlation and the mixing angle that realizes it.
class CorrelationSpec {
 public:
  // Throws DomainError when |rho| > 1 or rho is not finite.
  explicit CorrelationSpec(double rho);

  [[nodiscard]] double rho() const noexcept { return rho_; }
  [[nodiscard]] double theta() const noexcept { return theta_; }
  [[nodiscard]] double sin_theta() const noexcept { return sin_; }
  [[nodiscard]] double cos_theta() const noexcept { return cos_; }

 private:
  double rho_;
  double theta_;
  double sin_;
  double cos_;
};

struct PhaseVector {
  std::vector<double> values;  // radians, not wrapped
  double rho_used = 0.0;
  bool shuffled = false;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] std::span<const double> view() const noexcept { return values; }
};

struct PhaseMoments {
  double mean;
  double variance;
};

// E[cos phi] and E[sin phi] under the source law.
struct FourierCoefficients {
  double a;
  double b;
};

PhaseVector sample_iid(const PhaseDistribution& dist, std::size_t n, RandomStream& rng);

// theta = asin(rho) / 2. Throws DomainError for |rho| > 1.
double mixing_angle(double rho);

// (sin t * a + cos t * b, cos t * a + sin t * b). Unit-norm rows keep the
// variance of the inputs; the row dot product is sin(2t) = rho.
inline std::pair<double, double> correlate_pair(double phi_a, double phi_b,
                                                const CorrelationSpec& spec) noexcept {
  const double s = spec.sin_theta();
  const double c = spec.cos_theta();
  return {s * phi_a + c * phi_b, c * phi_a + s * phi_b};
}

// Draws n i.i.d. phases, mixes consecutive disjoint pairs (2m, 2m+1), then
// optionally applies a uniform random permutation from the same stream.
// Throws ArgumentError for n == 0 or for odd n with rho != 0.
PhaseVector make_correlated_phases(const PhaseDistribution& dist, double rho, std::size_t n,
                                   bool shuffle, RandomStream& rng);

// Allocation-free variant for the ensemble hot path; n = out.size().
void fill_correlated_phases(std::span<double> out, const PhaseDistribution& dist,
                            const CorrelationSpec& spec, bool shuffle, RandomStream& rng);

PhaseMoments theoretical_moments(const PhaseDistribution& dist) noexcept;

FourierCoefficients fourier_coeffs(const PhaseDistribution& dist) noexcept;

}  // namespace roguewave

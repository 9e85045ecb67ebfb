#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "roguewave/phases.hpp"

namespace roguewave {

struct FieldParams {
  double e0 = 1.0;    // incident amplitude
  double beta = 0.0;  // diffraction parameter, radians
  std::size_t n = 1;  // number of waves
};

struct FieldSample {
  double re;
  double im;
  double intensity;
};

// Single-slit envelope e0 * sinc(beta / 2), sinc(x) = sin(x) / x.
double envelope(double beta, double e0 = 1.0) noexcept;

// Far-field sum E = A_beta * sum_{j=1..N} exp(i (beta j + phi_j)) and |E|^2.
// Terms are accumulated in ascending j.
FieldSample field_intensity(std::span<const double> phases, const FieldParams& params);
FieldSample field_intensity(const PhaseVector& phases, const FieldParams& params);

// A_beta^2 [N + sum_{j != l} cos(beta (j - l) + phi_j - phi_l)]. O(N^2);
// independent route to |E|^2 used as a test oracle.
double intensity_expanded(std::span<const double> phases, const FieldParams& params);
double intensity_expanded(const PhaseVector& phases, const FieldParams& params);

// Mean intensity for i.i.d. phases with a = E[cos phi], b = E[sin phi]:
//   A_beta^2 [N + (a^2 + b^2) (sin^2(beta N / 2) / sin^2(beta / 2) - N)].
// The grating ratio takes its limit N^2 where |sin(beta / 2)| < 1e-12.
double expected_intensity(double beta, std::size_t n, double a, double b, double e0 = 1.0);

// Batched |E|^2 over a fixed beta grid.
//
// Holds the exact phasor table exp(i beta_k j) for j = 1..N, so a realization
// costs N sincos calls plus one complex multiply-add per (j, beta) pair.
// Several realizations share each table row to keep it in cache. Every output
// is computed with the same operation sequence as a lone evaluation, so
// results do not depend on batch composition.
class IntensityKernel {
 public:
  IntensityKernel(std::span<const double> betas, std::size_t n_waves, double e0 = 1.0);

  [[nodiscard]] std::size_t n_waves() const noexcept { return n_waves_; }
  [[nodiscard]] std::size_t n_beta() const noexcept { return n_beta_; }

  // phases: count x N row-major; out: count x n_beta row-major.
  void evaluate(std::span<const double> phases, std::span<double> out) const;

 private:
  void evaluate_group(const double* phases, std::size_t count, double* out) const;

  std::size_t n_waves_;
  std::size_t n_beta_;
  std::vector<double> cos_table_;  // row j-1 holds cos(beta_k j)
  std::vector<double> sin_table_;
  std::vector<double> envelope_sq_;
};

}  // namespace roguewave

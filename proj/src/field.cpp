#include "roguewave/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roguewave/errors.hpp"

namespace roguewave {

namespace {

constexpr std::size_t kGroup = 8;

void check_length(std::span<const double> phases, const FieldParams& params) {
  if (params.n == 0) {
    throw ArgumentError("field: n must be at least 1");
  }
  if (phases.size() != params.n) {
    throw ArgumentError("field: expected " + std::to_string(params.n) + " phases, got " +
                        std::to_string(phases.size()));
  }
}

}  // namespace

double envelope(double beta, double e0) noexcept {
  const double x = 0.5 * beta;
  if (std::abs(x) < 1e-8) {
    return e0 * (1.0 - x * x / 6.0);
  }
  return e0 * std::sin(x) / x;
}

FieldSample field_intensity(std::span<const double> phases, const FieldParams& params) {
  check_length(phases, params);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 1; j <= params.n; ++j) {
    const double arg = params.beta * static_cast<double>(j) + phases[j - 1];
    re += std::cos(arg);
    im += std::sin(arg);
  }
  const double amp = envelope(params.beta, params.e0);
  re *= amp;
  im *= amp;
  return {re, im, re * re + im * im};
}

FieldSample field_intensity(const PhaseVector& phases, const FieldParams& params) {
  return field_intensity(phases.view(), params);
}

double intensity_expanded(std::span<const double> phases, const FieldParams& params) {
  check_length(phases, params);
  const std::size_t n = params.n;
  double cross = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      if (j == l) continue;
      const double dj = static_cast<double>(j) - static_cast<double>(l);
      cross += std::cos(params.beta * dj + (phases[j] - phases[l]));
    }
  }
  const double amp = envelope(params.beta, params.e0);
  return amp * amp * (static_cast<double>(n) + cross);
}

double intensity_expanded(const PhaseVector& phases, const FieldParams& params) {
  return intensity_expanded(phases.view(), params);
}

double expected_intensity(double beta, std::size_t n, double a, double b, double e0) {
  if (n == 0) {
    throw ArgumentError("expected_intensity: n must be at least 1");
  }
  const double coherence = a * a + b * b;
  if (coherence > 1.0 + 1e-12) {
    throw ArgumentError("expected_intensity: a^2 + b^2 must not exceed 1");
  }
  const double nn = static_cast<double>(n);
  const double half = std::sin(0.5 * beta);
  double grating;
  if (std::abs(half) < 1e-12) {
    grating = nn * nn;
  } else {
    const double top = std::sin(0.5 * beta * nn);
    grating = (top * top) / (half * half);
  }
  const double amp = envelope(beta, e0);
  return amp * amp * (nn + coherence * (grating - nn));
}

IntensityKernel::IntensityKernel(std::span<const double> betas, std::size_t n_waves, double e0)
    : n_waves_(n_waves), n_beta_(betas.size()) {
  if (n_waves == 0 || betas.empty()) {
    throw ArgumentError("IntensityKernel: need at least one wave and one beta");
  }
  cos_table_.resize(n_waves_ * n_beta_);
  sin_table_.resize(n_waves_ * n_beta_);
  for (std::size_t j = 0; j < n_waves_; ++j) {
    const double index = static_cast<double>(j + 1);
    for (std::size_t k = 0; k < n_beta_; ++k) {
      const double arg = betas[k] * index;
      cos_table_[j * n_beta_ + k] = std::cos(arg);
      sin_table_[j * n_beta_ + k] = std::sin(arg);
    }
  }
  envelope_sq_.resize(n_beta_);
  for (std::size_t k = 0; k < n_beta_; ++k) {
    const double amp = envelope(betas[k], e0);
    envelope_sq_[k] = amp * amp;
  }
}

void IntensityKernel::evaluate(std::span<const double> phases, std::span<double> out) const {
  if (phases.size() % n_waves_ != 0) {
    throw ArgumentError("IntensityKernel: phase buffer is not a whole number of realizations");
  }
  const std::size_t count = phases.size() / n_waves_;
  if (out.size() != count * n_beta_) {
    throw ArgumentError("IntensityKernel: output buffer has the wrong size");
  }
  for (std::size_t first = 0; first < count; first += kGroup) {
    const std::size_t group = std::min(kGroup, count - first);
    evaluate_group(phases.data() + first * n_waves_, group, out.data() + first * n_beta_);
  }
}

void IntensityKernel::evaluate_group(const double* phases, std::size_t count,
                                     double* out) const {
  const std::size_t nb = n_beta_;
  thread_local std::vector<double> acc;
  thread_local std::vector<double> unit;
  acc.assign(2 * kGroup * nb, 0.0);
  unit.resize(2 * kGroup * n_waves_);

  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t j = 0; j < n_waves_; ++j) {
      const double phi = phases[r * n_waves_ + j];
      unit[(2 * r) * n_waves_ + j] = std::cos(phi);
      unit[(2 * r + 1) * n_waves_ + j] = std::sin(phi);
    }
  }

  for (std::size_t j = 0; j < n_waves_; ++j) {
    const double* __restrict wr = cos_table_.data() + j * nb;
    const double* __restrict wi = sin_table_.data() + j * nb;
    for (std::size_t r = 0; r < count; ++r) {
      const double zr = unit[(2 * r) * n_waves_ + j];
      const double zi = unit[(2 * r + 1) * n_waves_ + j];
      double* __restrict ar = acc.data() + (2 * r) * nb;
      double* __restrict ai = acc.data() + (2 * r + 1) * nb;
      for (std::size_t k = 0; k < nb; ++k) {
        ar[k] += zr * wr[k] - zi * wi[k];
        ai[k] += zr * wi[k] + zi * wr[k];
      }
    }
  }

  for (std::size_t r = 0; r < count; ++r) {
    const double* ar = acc.data() + (2 * r) * nb;
    const double* ai = acc.data() + (2 * r + 1) * nb;
    for (std::size_t k = 0; k < nb; ++k) {
      out[r * nb + k] = envelope_sq_[k] * (ar[k] * ar[k] + ai[k] * ai[k]);
    }
  }
}

}  // namespace roguewave

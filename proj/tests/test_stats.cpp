#include "roguewave/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "roguewave/errors.hpp"
#include "roguewave/experiment.hpp"
#include "roguewave/field.hpp"
#include "roguewave/rng.hpp"

using namespace roguewave;
using Catch::Approx;

namespace {

RunningMoments from(std::initializer_list<double> xs) {
  RunningMoments m;
  for (double x : xs) m.add(x);
  return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

struct TwoPass {
  double mean;
  double variance;
};

TwoPass two_pass(const std::vector<double>& v) {
  long double mean = 0.0L;
  for (double x : v) mean += x;
  mean /= static_cast<long double>(v.size());
  long double ss = 0.0L;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {static_cast<double>(mean), static_cast<double>(ss / (v.size() - 1))};
}

}  // namespace

TEST_CASE("running moments by hand", "[stats]") {
  const auto m = from({1.0, 2.0, 3.0});
  CHECK(m.count() == 3);
  CHECK(m.mean() == Approx(2.0));
  CHECK(*m.variance() == Approx(1.0));
  CHECK(m.max() == 3.0);
  CHECK(m.min() == 1.0);

  const auto one = update_moments(RunningMoments{}, 4.5);
  CHECK(one.count() == 1);
  CHECK(one.mean() == 4.5);
  CHECK_FALSE(one.variance().has_value());
  CHECK_FALSE(one.stddev().has_value());

  RunningMoments bad;
  CHECK_THROWS_AS(bad.add(std::numeric_limits<double>::infinity()), DataError);
  CHECK_THROWS_AS(bad.add(std::nan("")), DataError);
  CHECK(bad.empty());
}

TEST_CASE("running moments of uniform draws", "[stats]") {
  RandomStream rng{20, 0, 0};
  RunningMoments m;
  for (int i = 0; i < 1'000'000; ++i) m.add(rng.uniform01());
  CHECK(std::abs(m.mean() - 0.5) < 0.002);
  CHECK(*m.variance() == Approx(1.0 / 12.0).epsilon(0.02));
  CHECK(m.max() >= m.mean());
  CHECK(m.mean() >= m.min());
}

TEST_CASE("merging moments", "[stats]") {
  const auto x = from({1.0, 5.0, 2.5});
  const auto merged_empty = merge_moments(x, RunningMoments{});
  CHECK(merged_empty.count() == x.count());
  CHECK(merged_empty.mean() == x.mean());
  CHECK(merged_empty.m2() == x.m2());
  const auto empty_merged = merge_moments(RunningMoments{}, x);
  CHECK(empty_merged.mean() == x.mean());

  const auto ab = merge_moments(from({1.0, 2.0}), from({3.0}));
  const auto ref = from({1.0, 2.0, 3.0});
  CHECK(ab.count() == 3);
  CHECK(ab.mean() == Approx(ref.mean()));
  CHECK(*ab.variance() == Approx(*ref.variance()));
  CHECK(ab.max() == 3.0);
  CHECK(ab.min() == 1.0);

  SECTION("random splits equal the single pass") {
    RandomStream rng{21, 0, 0};
    std::vector<double> v(100'000);
    for (auto& x : v) x = rng.uniform(-3.0, 40.0);
    RunningMoments whole;
    for (double x : v) whole.add(x);
    for (int trial = 0; trial < 10; ++trial) {
      const auto cut = static_cast<std::size_t>(rng.uniform01() * v.size());
      RunningMoments left;
      RunningMoments right;
      for (std::size_t i = 0; i < v.size(); ++i) (i < cut ? left : right).add(v[i]);
      const auto merged = merge_moments(left, right);
      CHECK(merged.count() == whole.count());
      CHECK(rel(merged.mean(), whole.mean()) < 1e-10);
      CHECK(rel(*merged.variance(), *whole.variance()) < 1e-10);
      CHECK(merged.max() == whole.max());
      CHECK(merged.min() == whole.min());
    }
  }

  SECTION("merge is associative") {
    RandomStream rng{22, 0, 0};
    for (int trial = 0; trial < 50; ++trial) {
      RunningMoments a, b, c;
      for (int i = 0; i < 1 + trial; ++i) a.add(rng.uniform(0.0, 1e3));
      for (int i = 0; i < 7; ++i) b.add(rng.uniform(-5.0, 5.0));
      for (int i = 0; i < 3 * trial + 2; ++i) c.add(rng.uniform(1e4, 2e4));
      const auto left = merge_moments(merge_moments(a, b), c);
      const auto right = merge_moments(a, merge_moments(b, c));
      CHECK(left.count() == right.count());
      CHECK(rel(left.mean(), right.mean()) < 1e-9);
      CHECK(rel(left.m2(), right.m2()) < 1e-9);
    }
  }
}

TEST_CASE("single-pass variance tracks two-pass over wide ranges", "[stats]") {
  RandomStream rng{23, 0, 0};
  std::vector<double> v(1'000'000);
  // log-uniform over six decades
  for (auto& x : v) x = std::pow(10.0, rng.uniform(0.0, 6.0));
  RunningMoments m;
  for (double x : v) m.add(x);
  const auto ref = two_pass(v);
  CHECK(rel(m.mean(), ref.mean) < 1e-8);
  CHECK(rel(*m.variance(), ref.variance) < 1e-8);
}

TEST_CASE("histogram bins", "[stats]") {
  const BinSpec spec{};
  CHECK(spec.bin_count() == 256);
  CHECK_THROWS_AS((BinSpec{0.0, 1.0, 0.3}.validate()), ArgumentError);
  CHECK_THROWS_AS((BinSpec{0.0, 1.0, -1.0}.validate()), ArgumentError);
  CHECK_THROWS_AS((BinSpec{2.0, 1.0, 0.5}.validate()), ArgumentError);

  SECTION("constant samples land in the bin containing 1") {
    const std::vector<double> v(1000, 7.5);
    const auto h = build_histogram(v, 7.5);
    CHECK(h.total() == 1000);
    CHECK(h.counts()[4] == 1000);  // [1.0, 1.25)
    CHECK(h.density(4) == Approx(1.0 / 0.25));
  }
  SECTION("empty stream") {
    const auto h = build_histogram(std::vector<double>{}, 1.0);
    CHECK(h.total() == 0);
    CHECK(std::all_of(h.counts().begin(), h.counts().end(), [](auto c) { return c == 0; }));
    CHECK(h.density(0) == 0.0);
  }
  SECTION("edges, underflow and overflow") {
    Histogram h{BinSpec{0.0, 2.0, 0.5}};
    for (double u : {-0.1, 0.0, 0.49999, 0.5, 1.0, 1.9999, 2.0, 100.0}) h.add(u);
    CHECK(h.underflow() == 1);
    CHECK(h.overflow() == 2);
    CHECK(h.counts() == std::vector<std::uint64_t>{2, 1, 1, 1});
    CHECK(h.bin_edges() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  }
  SECTION("non-positive normalization") {
    const std::vector<double> v{1.0};
    CHECK_THROWS_AS(build_histogram(v, 0.0), ArgumentError);
    CHECK_THROWS_AS(build_histogram(v, -2.0), ArgumentError);
  }
  SECTION("mass is conserved across any partition of the stream") {
    RandomStream rng{24, 0, 0};
    std::vector<double> v(20'000);
    for (auto& x : v) x = -std::log1p(-rng.uniform01()) * 3.0;
    const auto whole = build_histogram(v, 1.5);
    Histogram parts{BinSpec{}};
    std::size_t start = 0;
    while (start < v.size()) {
      const auto len = std::min<std::size_t>(v.size() - start, 1 + rng() % 3000);
      parts.merge(build_histogram(std::span<const double>{v}.subspan(start, len), 1.5));
      start += len;
    }
    CHECK(parts.counts() == whole.counts());
    CHECK(parts.total() == v.size());
    std::uint64_t sum = parts.underflow() + parts.overflow();
    for (auto c : parts.counts()) sum += c;
    CHECK(sum == parts.total());
    double integral = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) integral += parts.density(i) * 0.25;
    CHECK(integral ==
          Approx(static_cast<double>(parts.total() - parts.overflow() - parts.underflow()) /
                 static_cast<double>(parts.total())));
  }
  SECTION("mismatched specs do not merge") {
    Histogram a{BinSpec{}};
    Histogram b{BinSpec{0.0, 32.0, 0.25}};
    CHECK_THROWS_AS(a.merge(b), ArgumentError);
  }
}

TEST_CASE("speckle intensity histogram follows exp(-u)", "[stats]") {
  // 10^6 intensities of 256 random phasors at a single beta.
  const std::vector<double> beta{std::numbers::pi / 2};
  const std::size_t n = 256;
  const std::size_t runs = 1'000'000;
  const IntensityKernel kernel{beta, n};
  std::vector<double> samples(runs);
  std::vector<double> phases(n * 1000);
  for (std::size_t block = 0; block < runs / 1000; ++block) {
    RandomStream rng{25, 0, block};
    for (auto& p : phases) p = rng.uniform(-std::numbers::pi, std::numbers::pi);
    kernel.evaluate(phases, std::span<double>{samples}.subspan(block * 1000, 1000));
  }
  RunningMoments m;
  for (double x : samples) m.add(x);
  const auto h = build_histogram(samples, m.mean());

  std::vector<double> normalized(samples);
  for (auto& x : normalized) x /= m.mean();
  CHECK(ks_distance_exponential(normalized) < 0.01);

  // Same bound on the binned CDF.
  double cdf = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    cdf += static_cast<double>(h.counts()[i]) / static_cast<double>(h.total());
    worst = std::max(worst, std::abs(cdf + std::expm1(-h.bin_edges()[i + 1])));
  }
  CHECK(worst < 0.01);
  // Straight line on a log axis: log density near -u in the bulk.
  for (std::size_t i : {2, 8, 16, 24}) {
    const double mid = 0.5 * (h.bin_edges()[i] + h.bin_edges()[i + 1]);
    CHECK(std::log(h.density(i)) == Approx(-mid).margin(0.1));
  }
}

TEST_CASE("pearson", "[stats]") {
  const std::vector<double> x{1.0, 2.0, 4.0, 8.0, 3.0};
  std::vector<double> neg(x.size());
  std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
  CHECK(pearson(x, x) == Approx(1.0));
  CHECK(pearson(x, neg) == Approx(-1.0));

  const std::vector<double> flat(5, 2.0);
  CHECK_THROWS_AS(pearson(x, flat), DegenerateInputError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1.0}, std::vector<double>{2.0}), ArgumentError);
  CHECK_THROWS_AS(pearson(x, std::vector<double>{1.0, 2.0}), ArgumentError);

  RandomStream rng{26, 0, 0};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(20), b(20);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = rng.uniform(-1.0, 1.0);
      b[i] = 0.3 * a[i] + rng.uniform(-1.0, 1.0);
    }
    const double r = pearson(a, b);
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
    CHECK(pearson(b, a) == Approx(r).margin(1e-15));
  }
}

TEST_CASE("spearman", "[stats]") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> y{1.0, 4.0, 9.0, 16.0, 25.0};
  CHECK(spearman(x, y) == Approx(1.0));
  const std::vector<double> z{2.0, 1.0, 3.0, 4.0, 5.0};
  // 1 - 6 * 2 / (5 * 24)
  CHECK(spearman(x, z) == Approx(0.9));
  const std::vector<double> ties{1.0, 1.0, 2.0, 3.0, 3.0};
  CHECK(spearman(x, ties) == Approx(pearson(std::vector<double>{1.5, 1.5, 3, 4.5, 4.5}, x)));
}

TEST_CASE("rogue level", "[stats]") {
  const auto m = from({0.0, 0.0, 10.0});
  const auto r = rogue_level(m);
  const double mean = 10.0 / 3.0;
  const double sigma = std::sqrt(((mean * mean) * 2 + (10.0 - mean) * (10.0 - mean)) / 2.0);
  CHECK(r.mean == Approx(mean));
  CHECK(r.sigma == Approx(sigma));
  CHECK(r.i_max == 10.0);
  CHECK(r.eta == Approx((10.0 - mean) / sigma));
  CHECK(r.eta == Approx(2.0 / std::sqrt(3.0)));
  CHECK_FALSE(r.eta_base.has_value());

  const auto rb = rogue_level(m, 2.0, 0.5);
  CHECK(rb.rho == 0.5);
  CHECK(*rb.eta_base == Approx((10.0 - mean) / 2.0));

  CHECK_THROWS_AS(rogue_level(from({1.0})), DegenerateInputError);
  CHECK_THROWS_AS(rogue_level(from({2.0, 2.0, 2.0})), DegenerateInputError);
  CHECK_THROWS_AS(rogue_level(m, 0.0), DegenerateInputError);
}

TEST_CASE("rogue level is scale invariant", "[stats]") {
  RandomStream rng{27, 0, 0};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(500);
    for (auto& x : v) x = -std::log1p(-rng.uniform01());
    const double c = rng.uniform(1e-3, 1e4);
    RunningMoments a, b;
    for (double x : v) {
      a.add(x);
      b.add(c * x);
    }
    CHECK(rogue_level(b).eta == Approx(rogue_level(a).eta).epsilon(1e-12));
  }
}

TEST_CASE("survival and KS helpers", "[stats]") {
  const std::vector<double> v{0.5, 1.0, 2.0, 10.0, 11.0};
  CHECK(survival(v, 10.0) == Approx(0.2));
  CHECK(survival(v, 0.0) == Approx(1.0));
  CHECK_THROWS_AS(survival(std::vector<double>{}, 1.0), ArgumentError);

  const std::vector<double> single{std::log(2.0)};  // CDF 0.5 at the point
  CHECK(ks_distance_exponential(single) == Approx(0.5));

  const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> b{3.5, 4.5, 5.5, 6.5};
  CHECK(ks_two_sample(a, a) == 0.0);
  CHECK(ks_two_sample(a, b) == Approx(0.75));
  CHECK(ks_two_sample(b, a) == Approx(0.75));
}

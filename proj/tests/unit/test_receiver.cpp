#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dropletmc/errors.hpp"
#include "dropletmc/receiver.hpp"

using namespace dropletmc;

namespace {

// Fraction of uniform points in the bounding box of the smaller circle
// (placed at the origin) that also fall in the other circle.
struct McArea {
  double area;
  double sigma;
};

McArea monte_carlo_area(double r1, double r2, double d, long n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double r_small = std::min(r1, r2);
  const double r_big = std::max(r1, r2);
  long hits = 0;
  for (long i = 0; i < n; ++i) {
    const double x = u(gen) * r_small;
    const double y = u(gen) * r_small;
    if (x * x + y * y > r_small * r_small) continue;
    const double dx = x - d;
    if (dx * dx + y * y <= r_big * r_big) ++hits;
  }
  const double box = 4.0 * r_small * r_small;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

}  // namespace

TEST_CASE("cross-section radius") {
  CHECK(*cross_section_radius(0.5, 1.0, 1.0) == doctest::Approx(0.5));
  CHECK(*cross_section_radius(0.5, 1.0, 1.5) == doctest::Approx(0.0));
  CHECK(*cross_section_radius(0.5, 1.0, 1.3) == doctest::Approx(0.4));
  CHECK(*cross_section_radius(0.5, 1.3, 1.0) == doctest::Approx(0.4));
  CHECK_FALSE(cross_section_radius(0.5, 1.0, 1.6).has_value());
  CHECK(*cross_section_radius(0.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("centre distance") {
  const ReceiverGeometry rx({1.5, 1.7, 0.0}, 0.08, 0.07);
  CHECK(center_distance(rx, 1.7, 0.0) == 0.0);
  CHECK(center_distance(rx, 1.7 + 3.0, 4.0) == doctest::Approx(5.0));
  CHECK(center_distance(rx, 1.5, 0.0) == doctest::Approx(0.2));
}

TEST_CASE("intersection area") {
  CHECK(intersection_area(1.0, 1.0, 2.0) == 0.0);
  CHECK(intersection_area(1.0, 0.5, 3.0) == 0.0);
  CHECK(intersection_area(1.0, 1.0, 0.0) == doctest::Approx(std::numbers::pi));
  CHECK(intersection_area(0.2, 1.0, 0.5) == doctest::Approx(std::numbers::pi * 0.04));
  CHECK(intersection_area(1.0, 0.2, 0.8) == doctest::Approx(std::numbers::pi * 0.04));
  CHECK(intersection_area(1.0, 1.0, 1.0) ==
        doctest::Approx(2.0 * std::numbers::pi / 3.0 - std::sqrt(3.0) / 2.0));
  CHECK(intersection_area(1.0, 1.0, 1.0) == doctest::Approx(1.2284).epsilon(1e-4));
  CHECK(intersection_area(0.0, 1.0, 0.5) == 0.0);
  CHECK_THROWS_AS(intersection_area(-1.0, 1.0, 0.5), InvalidParameter);

  SUBCASE("lens agrees with Monte Carlo") {
    const auto mc = monte_carlo_area(1.0, 1.0, 1.0, 10'000'000, 5);
    CHECK(std::fabs(intersection_area(1.0, 1.0, 1.0) - mc.area) <= 3.0 * mc.sigma);
    const auto mc2 = monte_carlo_area(0.3, 0.7, 0.6, 2'000'000, 6);
    CHECK(std::fabs(intersection_area(0.3, 0.7, 0.6) - mc2.area) <= 3.0 * mc2.sigma);
  }

  SUBCASE("symmetric, bounded and decreasing in distance") {
    double prev = intersection_area(0.3, 0.5, 0.0);
    for (double d = 0.01; d < 0.85; d += 0.01) {
      const double a = intersection_area(0.3, 0.5, d);
      CHECK(a == doctest::Approx(intersection_area(0.5, 0.3, d)));
      CHECK(a >= 0.0);
      CHECK(a <= std::numbers::pi * 0.09 * (1 + 1e-12));
      CHECK(a <= prev * (1 + 1e-12));
      prev = a;
    }
  }

  SUBCASE("continuous at containment and tangency") {
    const double eps = 1e-9;
    CHECK(intersection_area(0.3, 0.5, 0.2 + eps) == doctest::Approx(std::numbers::pi * 0.09).epsilon(1e-6));
    CHECK(intersection_area(0.3, 0.5, 0.8 - eps) == doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("receiver overlap branches") {
  const ReceiverGeometry rx({1.5, 1.7, 0.0}, 0.08992, 0.072355);
  TrajectoryPoint cloud;
  cloud.x = 1.5;
  cloud.y = 1.7;
  cloud.r = 0.3;

  auto o = receiver_overlap(cloud, rx);
  CHECK(o.branch == OverlapBranch::encompassed);
  CHECK(o.area == doctest::Approx(rx.A_R()));
  CHECK(o.r_CS == doctest::Approx(0.3));

  cloud.y = 1.7 + 0.3;  // partial
  o = receiver_overlap(cloud, rx);
  CHECK(o.branch == OverlapBranch::partial_overlap);
  CHECK(o.area > 0.0);
  CHECK(o.area < rx.A_R());
  CHECK(o.area == doctest::Approx(intersection_area(rx.r_R(), 0.3, 0.3)));

  cloud.y = 1.7 + 0.5;  // disjoint discs
  o = receiver_overlap(cloud, rx);
  CHECK(o.branch == OverlapBranch::none);
  CHECK(o.area == 0.0);

  cloud.y = 1.7;
  cloud.x = 1.0;  // plane misses the sphere
  o = receiver_overlap(cloud, rx);
  CHECK(o.branch == OverlapBranch::none);

  cloud.x = 1.2;  // tangent plane
  o = receiver_overlap(cloud, rx);
  CHECK(o.branch == OverlapBranch::none);
  CHECK(o.area == 0.0);

  cloud.x = 1.5;
  cloud.z = 10.0;
  o = receiver_overlap(cloud, rx);
  CHECK(o.branch == OverlapBranch::none);
}

TEST_CASE("geometric factor and class reconstruction") {
  const double eta = 4.0 * std::numbers::pi / 3.0;
  CHECK(reconstruct_class(1.0, 0.0, 1000.0, 0.5, eta, 0.1) == 0.0);
  CHECK(reconstruct_class(1.0, 0.01, 0.0, 0.5, eta, 0.1) == 0.0);
  CHECK(reconstruct_class(1.0, 0.01, 1000.0, 0.5, eta, 0.1) ==
        doctest::Approx(0.01 * 1000.0 * 0.1 / (eta * 0.125)));
  CHECK(reconstruct_class(1.0, 0.01, 1000.0, 0.5, eta, 0.1) == doctest::Approx(1.910).epsilon(1e-3));
  CHECK(geometric_factor(1.0, 0.0, 0.0, eta, 0.1) == 0.0);
  CHECK_THROWS_AS(geometric_factor(1.0, 0.01, 0.0, eta, 0.1), SingularGeometry);
}

TEST_CASE("quantization") {
  CHECK(quantize_exposure(1.0, 2.4) == 2);
  CHECK(quantize_exposure(1.0, 2.5) == 3);
  CHECK(quantize_exposure(0.5, 0.0) == 0);

  std::vector<std::vector<double>> zero{{0.0, 0.0}, {0.0}};
  CHECK(accumulate_quantize(3.0, zero).total == 0);

  std::vector<std::vector<double>> two{{1.0, 0.6}, {2.6}};
  const auto q = accumulate_quantize(1.0, two);
  REQUIRE(q.per_class.size() == 2);
  CHECK(q.per_class[0] == 2);
  CHECK(q.per_class[1] == 3);
  CHECK(q.total == 5);

  std::vector<std::vector<double>> scaled{{4.0, 6.0}};
  CHECK(accumulate_quantize(0.25, scaled).total == 3);  // floor(2.5 + 0.5)
}

TEST_CASE("detection") {
  CHECK(detect(5, 5) == 0);
  CHECK(detect(1, 0) == 1);
  CHECK(detect(3, 10) == 0);
  CHECK(detect(0, 0) == 0);
}

TEST_CASE("depletion") {
  CHECK(deplete(100.0, 10) == 90.0);
  CHECK(deplete(5.0, 9) == 0.0);
  CHECK(deplete(7.25, 0) == 7.25);
}

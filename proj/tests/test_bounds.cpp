#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bssc/bounds.hpp"
#include "bssc/info.hpp"
#include "bssc/prob.hpp"

using namespace bssc;

namespace {

// Exact values: Delta(4/5) = 1.2 log2(3) - 2, tangent chord slope
// (5/4) Delta(4/5), stationarity constant c = 3(log2(3) - 1), argmax of the
// difference curve (15 - sqrt(105))/30, and the single-auxiliary sum-rate
// maximum log2(35/27).
const double kDelta45 = 1.2 * std::log2(3.0) - 2.0;
const double kChordSlope = 1.25 * kDelta45;
const double kStationarityC = 3.0 * (std::log2(3.0) - 1.0);
const double kArgmaxDelta = (15.0 - std::sqrt(105.0)) / 30.0;
const double kKmValue = std::log2(35.0 / 27.0);
const double kHalfCapacity = 0.3112781244591328;  // h(1/4) - 1/2

}  // namespace

TEST_CASE("difference curve") {
  CHECK(std::abs(difference_curve(0.5)) < 1e-14);
  CHECK(std::abs(difference_curve(0.8) - kDelta45) < 1e-12);
  CHECK(std::abs(difference_curve(kArgmaxDelta) - 0.10072952) < 1e-7);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double x = uni(rng);
    CHECK(std::abs(difference_curve(x) + difference_curve(1.0 - x)) < 1e-12);
  }
  CHECK_THROWS_AS(difference_curve(1.2), std::domain_error);
}

TEST_CASE("maximum of the difference curve") {
  const MaxDifference m = max_difference();
  CHECK(std::abs(m.d - 0.10072952) < 1e-6);
  CHECK(std::abs(m.x_d - 0.15843497) < 1e-5);
  CHECK(std::abs(m.x_d - kArgmaxDelta) < 1e-7);
  // Skew-symmetry: the minimum mirrors the maximum.
  CHECK(std::abs(difference_curve(1.0 - m.x_d) + m.d) < 1e-12);
}

TEST_CASE("analytic lower convex envelope") {
  const EnvelopeResult env = lower_convex_envelope();
  CHECK(env.mode == EnvelopeMode::Analytic);
  CHECK(std::abs(env.breakpoint - 0.8) < 1e-6);
  CHECK(std::abs(env.chord_slope - kChordSlope) < 1e-8);
  CHECK(env.g(0.0) == 0.0);
  CHECK(std::abs(env.g(0.5) - 0.5 * kChordSlope) < 1e-9);
  CHECK(env.g(0.9) == difference_curve(0.9));
  CHECK(std::abs(env.g(env.breakpoint) - difference_curve(env.breakpoint)) < 1e-9);

  // Minorant property on a dense grid.
  for (int i = 0; i <= 2000; ++i) {
    const double x = i / 2000.0;
    CHECK(env.g(x) <= difference_curve(x) + 1e-10);
  }
  // Convexity via midpoint inequalities on sampled pairs.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double a = uni(rng), b = uni(rng);
    CHECK(env.g(0.5 * (a + b)) <= 0.5 * (env.g(a) + env.g(b)) + 1e-10);
  }
}

TEST_CASE("numeric envelope agrees with the analytic one") {
  const EnvelopeResult analytic = lower_convex_envelope();
  const EnvelopeResult numeric = lower_convex_envelope(4096, EnvelopeMode::Numeric);
  CHECK(numeric.g(0.0) == 0.0);
  CHECK(std::abs(numeric.breakpoint - 0.8) < 1e-3);
  CHECK(std::abs(numeric.chord_slope - kChordSlope) < 1e-3);
  double sup = 0.0;
  for (int i = 0; i < 4096; ++i) {
    // Evaluate on the construction grid: the hull minorizes its own samples
    // exactly, while between samples a chord may sit above the convex curve
    // by a curvature-sized sliver.
    const double x = i / 4095.0;
    sup = std::max(sup, std::abs(analytic.g(x) - numeric.g(x)));
    CHECK(numeric.g(x) <= difference_curve(x) + 1e-12);
  }
  CHECK(sup < 2e-4);
  // Hull vertices walk left to right with increasing slopes.
  for (std::size_t i = 2; i < numeric.hull.size(); ++i) {
    const auto& [x0, y0] = numeric.hull[i - 2];
    const auto& [x1, y1] = numeric.hull[i - 1];
    const auto& [x2, y2] = numeric.hull[i];
    CHECK((y1 - y0) / (x1 - x0) <= (y2 - y1) / (x2 - x1) + 1e-12);
  }
  CHECK_THROWS_AS(lower_convex_envelope(10, EnvelopeMode::Numeric),
                  std::invalid_argument);
}

TEST_CASE("two-auxiliary inner bound sum rate") {
  const SumRateReport m = marton_sum_rate();
  CHECK(m.bound_id == "marton");
  CHECK(std::abs(m.value - 0.36164288) < 1e-5);
  CHECK(std::abs(m.aux_dist[0] - 0.5) < 1e-4);
  CHECK(std::abs(m.x0_given_aux[0] - 0.15843497) < 1e-4);
  CHECK(std::abs(m.x0_given_aux[1] - 0.84156502) < 1e-4);

  const double cap = m.components.at("cap");
  CHECK(m.value <= cap + 1e-9);
  CHECK(std::abs(m.value - cap) < 1e-5);
  CHECK(std::abs(m.components.at("max_sum_mi") - 0.6225562) < 1e-6);
  CHECK(std::abs(m.components.at("d") - 0.10072952) < 1e-6);
  CHECK(std::abs(cap - 0.5 * (0.6225562 + 0.10072952)) < 1e-6);
  CHECK(std::abs(m.rate_point.first - 0.18082144) < 1e-5);

  // The report's achiever reproduces the reported value.
  const double w0 = m.aux_dist[0], a0 = m.x0_given_aux[0], a1 = m.x0_given_aux[1];
  const JointDist pwx({2, 2}, {w0 * a0, w0 * (1 - a0), (1 - w0) * a1,
                               (1 - w0) * (1 - a1)});
  CHECK(std::abs(marton_objective(pwx) - m.value) < 1e-9);
}

TEST_CASE("auxiliary relabeling symmetry of the inner-bound objective") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double w0 = uni(rng), a0 = uni(rng), a1 = uni(rng);
    const JointDist p({2, 2}, {w0 * a0, w0 * (1 - a0), (1 - w0) * a1,
                               (1 - w0) * (1 - a1)});
    const JointDist q({2, 2}, {(1 - w0) * a1, (1 - w0) * (1 - a1), w0 * a0,
                               w0 * (1 - a0)});
    CHECK(std::abs(marton_objective(p) - marton_objective(q)) < 1e-12);
  }
}

TEST_CASE("pair outer bound sum rate") {
  const SumRateReport o = outer_sum_rate();
  CHECK(o.bound_id == "outer");
  CHECK(std::abs(o.value - 0.3725562) < 1e-6);
  CHECK(std::abs(o.value - (kHalfCapacity - 0.5 * kChordSlope)) < 1e-8);
  CHECK(std::abs(o.components.at("I(X;Y1)") - kHalfCapacity) < 1e-12);
  CHECK(std::abs(o.components.at("grid_value") - o.value) < 1e-4);
  CHECK(std::abs(o.aux_dist[0] - 0.375) < 1e-6);
  CHECK(std::abs(o.aux_dist[1] - 0.625) < 1e-6);
  CHECK(o.x0_given_aux[0] == 0.0);
  CHECK(std::abs(o.x0_given_aux[1] - 0.8) < 1e-6);

  // Recompute the value from the achiever through the generic pipeline.
  const double recompute = o.components.at("I(X;Y1)") +
                           o.components.at("I(X;Y2|U)") -
                           o.components.at("I(X;Y1|U)");
  CHECK(std::abs(recompute - o.value) < 1e-9);
}

TEST_CASE("single-auxiliary outer bound sum rate") {
  const SumRateReport k = km_sum_rate();
  CHECK(k.bound_id == "km");
  CHECK(std::abs(k.value - 0.3743955) < 1e-6);
  CHECK(std::abs(k.value - kKmValue) < 1e-9);
  CHECK(std::abs(k.components.at("x_star") - 0.4571429) < 1e-5);
  CHECK(std::abs(k.components.at("x_star") - 16.0 / 35.0) < 1e-6);
  CHECK(std::abs(k.components.at("c") - 1.7548875) < 1e-6);
  CHECK(std::abs(k.components.at("c") - kStationarityC) < 1e-8);
  CHECK(std::abs(k.components.at("x_star") - k.components.at("x_star_closed")) <
        1e-6);
  CHECK(std::abs(k.components.at("I(U;Y1)") - 0.2206837) < 1e-5);
  CHECK(std::abs(k.components.at("I(X;Y2|U)") - 0.1537118) < 1e-5);
  CHECK(std::abs(k.components.at("I(X;Y2)") - 0.3006499) < 1e-5);
  CHECK(std::abs(k.rate_point.first - 0.1871978) < 1e-6);
  CHECK(std::abs(k.rate_point.second - 0.1871978) < 1e-6);
  CHECK(k.components.at("upper_branch_max") < k.value);

  // Achiever consistency: the two reported terms add up to the value.
  CHECK(std::abs(k.components.at("I(U;Y1)") + k.components.at("I(X;Y2|U)") -
                 k.value) < 1e-9);
}

TEST_CASE("bound ordering") {
  const double marton = marton_sum_rate().value;
  const double outer = outer_sum_rate().value;
  const double km = km_sum_rate().value;
  CHECK(marton + 1e-3 < outer);
  CHECK(outer + 1e-3 < km);
}

TEST_CASE("rate points") {
  for (const std::string bound : {"outer", "km"}) {
    const auto pts = rate_points(bound);
    REQUIRE(pts.size() == 5);
    CHECK(std::abs(pts.front().second - 0.321928) < 1e-6);
    CHECK(pts.front().first == 0.0);
    CHECK(std::abs(pts.back().first - 0.321928) < 1e-6);
    CHECK(pts.back().second == 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      CHECK(pts[i].first >= pts[i - 1].first - 1e-12);
      CHECK(pts[i].second <= pts[i - 1].second + 1e-12);
    }
  }
  const auto km = rate_points("km");
  CHECK(std::abs(km[2].first - 0.1871978) < 1e-6);
  CHECK_THROWS_AS(rate_points("tight"), std::invalid_argument);
}

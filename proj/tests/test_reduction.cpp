#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bssc/bounds.hpp"
#include "bssc/conjecture.hpp"
#include "bssc/info.hpp"
#include "bssc/reduction.hpp"
#include "test_util.hpp"

using namespace bssc;

namespace {

// p(u,v,x) with X a deterministic function of (u,v).
JointDist random_deterministic(std::mt19937_64& rng, std::size_t nu,
                               std::size_t nv, std::size_t nx) {
  const auto mass = testutil::random_simplex(rng, nu * nv);
  std::vector<double> table(nu * nv * nx, 0.0);
  for (std::size_t c = 0; c < nu * nv; ++c) {
    table[c * nx + rng() % nx] = mass[c];
  }
  return JointDist({nu, nv, nx}, std::move(table));
}

JointDist random_joint3(std::mt19937_64& rng, std::size_t nu, std::size_t nv,
                        std::size_t nx) {
  return JointDist({nu, nv, nx}, testutil::random_simplex(rng, nu * nv * nx));
}

JointDist lift_and_joint(const JointUV& j) {
  // (u,v,x) with x = u AND v.
  std::vector<double> t(8, 0.0);
  t[0 * 4 + 0 * 2 + 0] = j.p00;
  t[0 * 4 + 1 * 2 + 0] = j.p01;
  t[1 * 4 + 0 * 2 + 0] = j.p10;
  t[1 * 4 + 1 * 2 + 1] = j.p11;
  return JointDist({2, 2, 2}, std::move(t));
}

// Independent re-implementation of the emptied-slice drop, for replaying
// reduction certificates.
JointDist compact_axis(const JointDist& p, std::size_t axis) {
  const auto mass = p.marginal_sums(axis);
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < mass.size(); ++a) {
    if (mass[a] > 1e-300) keep.push_back(a);
  }
  std::vector<std::size_t> shape = p.shape();
  shape[axis] = keep.size();
  std::size_t cells = 1;
  for (std::size_t s : shape) cells *= s;
  std::vector<double> out(cells, 0.0);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    // Unpack against the compacted shape, then map the axis coordinate back.
    std::vector<std::size_t> coords(shape.size());
    std::size_t rest = idx;
    for (std::size_t a = shape.size(); a-- > 0;) {
      coords[a] = rest % shape[a];
      rest /= shape[a];
    }
    coords[axis] = keep[coords[axis]];
    std::size_t src = 0;
    for (std::size_t a = 0; a < shape.size(); ++a) {
      src += coords[a] * p.stride(a);
    }
    out[idx] = p.table()[src];
  }
  return JointDist(std::move(shape), std::move(out));
}

}  // namespace

TEST_CASE("interval construction for deterministic conditionals") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const JointDist p = random_deterministic(rng, 2, 2, 2);
    const FunctionalizationResult r = hajek_construct(p);
    CHECK(r.w_dist.size() == 1);  // all thresholds collapse to {0,1}
    for (std::size_t u = 0; u < 2; ++u) {
      for (std::size_t v = 0; v < 2; ++v) {
        const double mass = p.at3(u, v, 0) + p.at3(u, v, 1);
        if (mass <= 1e-300) continue;
        const auto px = r.recompose(u, v);
        CHECK(std::abs(px[0] - p.at3(u, v, 0) / mass) < 1e-12);
        CHECK(std::abs(px[1] - p.at3(u, v, 1) / mass) < 1e-12);
      }
    }
  }
}

TEST_CASE("interval construction for the uniform conditional") {
  std::vector<double> t(8, 0.125);
  const FunctionalizationResult r = hajek_construct(JointDist({2, 2, 2}, t));
  REQUIRE(r.w_dist.size() == 2);
  CHECK(std::abs(r.w_dist[0] - 0.5) < 1e-15);
  CHECK(std::abs(r.w_dist[1] - 0.5) < 1e-15);
  for (std::size_t u = 0; u < 2; ++u) {
    for (std::size_t v = 0; v < 2; ++v) {
      CHECK(r.map(u, v, 0) == 0);
      CHECK(r.map(u, v, 1) == 1);
    }
  }
}

TEST_CASE("interval construction recomposes random instances") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const JointDist p = random_joint3(rng, 2, 2, 2);
    const FunctionalizationResult r = hajek_construct(p);
    CHECK(r.w_dist.size() <= 8);
    for (std::size_t u = 0; u < 2; ++u) {
      for (std::size_t v = 0; v < 2; ++v) {
        const double mass = p.at3(u, v, 0) + p.at3(u, v, 1);
        const auto px = r.recompose(u, v);
        for (std::size_t x = 0; x < 2; ++x) {
          CHECK(std::abs(px[x] - p.at3(u, v, x) / mass) <= 1e-12);
        }
      }
    }
  }
  // A ternary output alphabet stays within the interval budget too.
  const JointDist p3 = random_joint3(rng, 2, 2, 3);
  const FunctionalizationResult r3 = hajek_construct(p3);
  CHECK(r3.w_dist.size() <= 12);
  for (std::size_t u = 0; u < 2; ++u) {
    for (std::size_t v = 0; v < 2; ++v) {
      double mass = 0;
      for (std::size_t x = 0; x < 3; ++x) mass += p3.at3(u, v, x);
      const auto px = r3.recompose(u, v);
      for (std::size_t x = 0; x < 3; ++x) {
        CHECK(std::abs(px[x] - p3.at3(u, v, x) / mass) <= 1e-12);
      }
    }
  }
}

TEST_CASE("null space direction existence") {
  // A generic deterministic 2x2x2 instance leaves no room to perturb.
  std::vector<double> t(8, 0.0);
  t[0 * 4 + 0 * 2 + 0] = 0.1;  // f(0,0) = 0
  t[0 * 4 + 1 * 2 + 1] = 0.3;  // f(0,1) = 1
  t[1 * 4 + 0 * 2 + 0] = 0.4;  // f(1,0) = 0
  t[1 * 4 + 1 * 2 + 1] = 0.2;  // f(1,1) = 1
  CHECK_FALSE(null_space_direction(JointDist({2, 2, 2}, t)).has_value());

  // Three input symbols against a binary X always admit one.
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const JointDist p = random_deterministic(rng, 3, 2, 2);
    const auto dir = null_space_direction(p);
    REQUIRE(dir.has_value());
    CHECK(direction_valid(p, 0, *dir));
    double norm = 0;
    for (double l : dir->L) norm += l * l;
    CHECK(std::abs(norm - 1.0) < 1e-12);
  }
}

TEST_CASE("duplicate rows give an explicit direction") {
  // p(v,x|u=0) == p(v,x|u=1): the difference of the two indicator vectors is
  // a valid direction.
  std::vector<double> t(12, 0.0);
  const double w[3] = {0.3, 0.3, 0.4};
  // u = 0 and u = 1 share the conditional (v=0 -> x=0, v=1 -> x=1).
  for (int u = 0; u < 2; ++u) {
    t[u * 4 + 0 * 2 + 0] = w[u] * 0.6;
    t[u * 4 + 1 * 2 + 1] = w[u] * 0.4;
  }
  t[2 * 4 + 0 * 2 + 1] = w[2] * 0.5;
  t[2 * 4 + 1 * 2 + 0] = w[2] * 0.5;
  const JointDist p({3, 2, 2}, t);

  const double s = 1.0 / std::sqrt(2.0);
  LyapunovDirection hand{{s, -s, 0.0}, 1.0 / s};
  CHECK(direction_valid(p, 0, hand));

  const auto found = null_space_direction(p);
  REQUIRE(found.has_value());
  CHECK(direction_valid(p, 0, *found));
}

TEST_CASE("perturbation application") {
  std::mt19937_64 rng(34);
  const JointDist p = random_deterministic(rng, 3, 2, 2);
  const auto dir = null_space_direction(p);
  REQUIRE(dir.has_value());

  // Zero step returns the same distribution.
  LyapunovDirection still{dir->L, 0.0};
  const JointDist same = apply_perturbation(p, 0, still);
  for (std::size_t i = 0; i < p.cells(); ++i) {
    CHECK(std::abs(same.table()[i] - p.table()[i]) < 1e-15);
  }

  // The support-killing step empties one u-slice and keeps p(x).
  const JointDist q = apply_perturbation(p, 0, *dir);
  const auto mass_before = p.marginal_sums(0);
  const auto mass_after = q.marginal_sums(0);
  int killed = 0;
  for (std::size_t u = 0; u < 3; ++u) {
    if (mass_before[u] > 1e-300 && mass_after[u] <= 1e-300) ++killed;
  }
  CHECK(killed >= 1);
  const auto mx_before = p.marginal_sums(2);
  const auto mx_after = q.marginal_sums(2);
  for (std::size_t x = 0; x < 2; ++x) {
    CHECK(std::abs(mx_before[x] - mx_after[x]) <= 1e-14);
  }
  // Zero cells stay exactly zero.
  for (std::size_t i = 0; i < p.cells(); ++i) {
    if (p.table()[i] == 0.0) CHECK(q.table()[i] == 0.0);
  }

  // A step beyond the kill point drives factors negative and is rejected.
  LyapunovDirection toofar{dir->L, dir->epsilon * 2.0};
  CHECK_THROWS_AS(apply_perturbation(p, 0, toofar), std::invalid_argument);
}

TEST_CASE("support reduction on seeded deterministic instances") {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 100; ++i) {
    const JointDist p = random_deterministic(rng, 3, 2, 2);
    const ReductionResult r = reduce_support(p, conjecture_lhs);
    CHECK(r.reduced.shape()[0] <= 2);
    // One support point dies per step; degenerate instances (a constant X)
    // can shrink an axis below the output alphabet size.
    CHECK(r.certificate.size() <= 3);
    const auto mx_before = p.marginal_sums(2);
    const auto mx_after = r.reduced.marginal_sums(2);
    for (std::size_t x = 0; x < 2; ++x) {
      CHECK(std::abs(mx_before[x] - mx_after[x]) <= 1e-14);
    }
    // Replay the certificate: every recorded step is a valid direction for
    // the distribution it was applied to, and the objective values match.
    JointDist cur = p;
    for (const ReductionStep& step : r.certificate) {
      LyapunovDirection dir{step.L, step.epsilon};
      CHECK(direction_valid(cur, step.axis, dir));
      CHECK(std::abs(step.obj_before - conjecture_lhs(cur)) < 1e-12);
      JointDist next = compact_axis(apply_perturbation(cur, step.axis, dir),
                                    step.axis);
      CHECK(next.shape()[step.axis] < cur.shape()[step.axis]);
      CHECK(std::abs(step.obj_after - conjecture_lhs(next)) < 1e-12);
      cur = std::move(next);
    }
    for (std::size_t i = 0; i < cur.cells(); ++i) {
      CHECK(cur.table()[i] == r.reduced.table()[i]);
    }
  }
}

TEST_CASE("already reduced instances pass through") {
  std::vector<double> t(8, 0.0);
  t[0 * 4 + 0 * 2 + 0] = 0.1;
  t[0 * 4 + 1 * 2 + 1] = 0.3;
  t[1 * 4 + 0 * 2 + 0] = 0.4;
  t[1 * 4 + 1 * 2 + 1] = 0.2;
  const JointDist p({2, 2, 2}, t);
  const ReductionResult r = reduce_support(p);
  CHECK(r.certificate.empty());
  CHECK(r.reduced.shape() == p.shape());
  for (std::size_t i = 0; i < p.cells(); ++i) {
    CHECK(r.reduced.table()[i] == p.table()[i]);
  }
}

TEST_CASE("objective preserved when reducing a duplicated maximizer") {
  // Split the heavy row of an approximate maximizer of the left side into
  // two identical copies; merging them back must not lose objective value.
  const MaximizeResult mx = maximize_lhs(BoolFunc2::from_name("and"), 0.05, 100);
  const JointDist base = lift_and_joint(mx.arg);
  std::vector<double> t(12, 0.0);
  for (std::size_t v = 0; v < 2; ++v) {
    for (std::size_t x = 0; x < 2; ++x) {
      t[(0 * 2 + v) * 2 + x] = 0.5 * base.at3(1, v, x);
      t[(1 * 2 + v) * 2 + x] = 0.5 * base.at3(1, v, x);
      t[(2 * 2 + v) * 2 + x] = base.at3(0, v, x);
    }
  }
  const JointDist lifted({3, 2, 2}, t);
  const double before = conjecture_lhs(lifted);
  CHECK(std::abs(before - mx.value) < 1e-12);

  const ReductionResult r = reduce_support(lifted, conjecture_lhs);
  CHECK(r.reduced.shape()[0] <= 2);
  CHECK(conjecture_lhs(r.reduced) >= before - 1e-4);
}

TEST_CASE("auxiliary reduction for the weighted sum-rate objective") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 50; ++i) {
    const JointDist p({3, 2}, testutil::random_simplex(rng, 6));
    const ReductionResult r = reduce_support(p, marton_objective);
    CHECK(r.reduced.shape()[0] <= 2);
    const auto mx_before = p.marginal_sums(1);
    const auto mx_after = r.reduced.marginal_sums(1);
    for (std::size_t x = 0; x < 2; ++x) {
      CHECK(std::abs(mx_before[x] - mx_after[x]) <= 1e-14);
    }
    for (const ReductionStep& s : r.certificate) {
      CHECK(std::isfinite(s.obj_before));
      CHECK(std::isfinite(s.obj_after));
    }
  }
}

TEST_CASE("conjecture objective on lifted joints matches the 2x2 path") {
  std::mt19937_64 rng(37);
  const BoolFunc2 f_and = BoolFunc2::from_name("and");
  for (int i = 0; i < 50; ++i) {
    const auto v = testutil::random_simplex4(rng);
    const JointUV j(v[0], v[1], v[2], v[3]);
    CHECK(std::abs(conjecture_lhs(lift_and_joint(j)) - objective(j, f_and).lhs) <
          1e-12);
  }
}

#include <doctest.h>

#include "cubic/constants.hpp"
#include "cubic/moments.hpp"
#include "oracles.hpp"

using namespace cubic;

namespace {

const FieldCtx& F7() {
  static const FieldCtx ctx = make_field(7);
  return ctx;
}

MomentOptions sample(std::uint64_t n, std::uint64_t seed, unsigned threads = 1) {
  MomentOptions o;
  o.mode = Mode::Sample;
  o.sample_size = n;
  o.seed = seed;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("genus zero family averages to one") {
  const MomentReport r = moment(F7(), 0, 0.5, MomentOptions{});
  CHECK(r.mean == Complex(1.0, 0.0));
  CHECK(r.sample_size == 7);
  CHECK(r.std_error == 0.0);
}

TEST_CASE("h(3) exhaustive average is real") {
  const MomentReport r = moment(F7(), 1, 0.5, MomentOptions{});
  CHECK(r.sample_size == 2058);
  CHECK(std::abs(r.mean.imag()) < 1e-10);
  CHECK(r.mean_doubled == r.mean.real());
  CHECK(r.prediction == doctest::Approx(M_q(7, 0.5).value));
  CHECK(std::abs(r.mean.real() - r.prediction) < 0.5);
  // odd characters of conductor degree 4: sum of a_n vanishes for n = 4 and conj symmetry makes the sums real
  for (const auto& c : r.coeff_sums) CHECK(c == c.conj());
}

TEST_CASE("transition prediction") {
  const MomentReport r = moment(F7(), 1, 1.0 / 3.0, MomentOptions{});
  CHECK(r.at_transition);
  CHECK(r.prediction == doctest::Approx(C_q(7).value * (1.0 + B_q(7).value)));
  CHECK(r.envelope == 1.0);
  const MomentReport below = moment(F7(), 1, 0.25, MomentOptions{});
  CHECK_FALSE(below.at_transition);
  CHECK(std::isfinite(below.prediction));
}

TEST_CASE("scan_s agrees with single-s runs") {
  const std::vector<double> grid{0.2, 0.5, 0.8};
  const auto scan = scan_s(F7(), 1, grid, MomentOptions{});
  REQUIRE(scan.size() == 3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const MomentReport one = moment(F7(), 1, grid[i], MomentOptions{});
    CHECK(one.mean == scan[i].mean);
  }
}

TEST_CASE("exhaustive mean matches a direct evaluation loop") {
  const FieldCtx& ctx = F7();
  CompensatedSum s;
  std::uint64_t n = 0;
  family_H3g(ctx, 1, [&](const Character& chi) {
    s += eval_L(compute_coeffs(ctx, chi), 0.4);
    ++n;
  });
  CHECK(std::abs(moment(ctx, 1, 0.4, MomentOptions{}).mean - s.value() / double(n)) < 1e-12);
}

TEST_CASE("sampling is uniform over square-free moduli and reproducible") {
  const FieldCtx& ctx = F7();
  const auto a = family_subset(ctx, 2, sample(500, 11, 1));
  const auto b = family_subset(ctx, 2, sample(500, 11, 3));
  CHECK(a == b);
  for (const Poly& F : a) {
    CHECK(F.degree() == 7);
    CHECK(is_squarefree(ctx, F));
  }
  CHECK(family_subset(ctx, 2, sample(500, 12, 1)) != a);
  // prefix property: the i-th draw depends on (seed, i) only
  const auto c = family_subset(ctx, 2, sample(100, 11, 1));
  CHECK(std::equal(c.begin(), c.end(), a.begin()));
}

TEST_CASE("sampled moments are bit-identical across thread counts") {
  const MomentReport r1 = moment(F7(), 2, 1.0 / 3.0, sample(300, 5, 1));
  const MomentReport r4 = moment(F7(), 2, 1.0 / 3.0, sample(300, 5, 4));
  CHECK(r1.mean == r4.mean);
  CHECK(r1.std_error == r4.std_error);
  CHECK(r1.coeff_sums == r4.coeff_sums);
  CHECK(r1.sample_digest == r4.sample_digest);
  CHECK(r1.std_error > 0.0);
  CHECK(r1.seed == 5);
}

TEST_CASE("moment errors") {
  const FieldCtx& ctx = F7();
  CHECK_THROWS_AS(moment(ctx, 0, 0.5, sample(8, 1)), Error);
  CHECK_THROWS_AS(moment(ctx, 1, 1.0, MomentOptions{}), Error);
  CHECK_THROWS_AS(moment(ctx, 1, 0.0, MomentOptions{}), Error);
  try {
    moment(ctx, 3, 0.5, MomentOptions{});
    FAIL("expected SampleTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SampleTooLarge);
  }
}

TEST_CASE("principal plus dual reproduces the family sum") {
  const FieldCtx& ctx = F7();
  for (int A : {0, 1}) {
    for (double s : {0.2, 1.0 / 3.0, 0.5}) {
      const SplitReport r = principal_dual_split(ctx, 1, s, A, MomentOptions{});
      CHECK(r.n == 2058);
      CHECK(r.relative_error() < 1e-9);
      CHECK(r.max_character_error < 1e-9);
    }
  }
  const SplitReport r = principal_dual_split(ctx, 2, 0.5, -1, sample(40, 3));
  CHECK(r.A == 1);
  CHECK(r.relative_error() < 1e-9);
  try {
    principal_dual_split(ctx, 1, 0.5, 2, MomentOptions{});
    FAIL("expected BadSplit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadSplit);
  }
}

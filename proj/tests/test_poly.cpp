#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace cubic;

namespace {
const FieldCtx& F7() {
  static const FieldCtx ctx = make_field(7);
  return ctx;
}
Poly P(const std::string& s) { return parse_poly(F7(), s); }
}  // namespace

TEST_CASE("enumerate_monic counts and order") {
  const FieldCtx& ctx = F7();
  CHECK(enumerate_monic(ctx, 0).size() == 1);
  CHECK(*enumerate_monic(ctx, 0).begin() == Poly::one());
  std::uint64_t n = 0;
  for (const Poly& f : enumerate_monic(ctx, 2)) {
    CHECK(f.degree() == 2);
    ++n;
  }
  CHECK(n == 49);

  std::vector<Poly> all;
  for (const Poly& f : enumerate_monic(ctx, 3)) all.push_back(f);
  std::vector<Poly> window;
  for (const Poly& f : enumerate_monic(ctx, 3, 100, 50)) window.push_back(f);
  REQUIRE(window.size() == 50);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(window[i] == all[100 + i]);
    CHECK(monic_rank(ctx, window[i]) == 100 + i);
  }
  CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("chunked enumeration reproduces the stream") {
  const FieldCtx& ctx = F7();
  std::vector<Poly> all;
  for (const Poly& f : enumerate_monic(ctx, 4)) all.push_back(f);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Poly> joined;
    std::uint64_t off = 0;
    while (off < all.size()) {
      const std::uint64_t len = 1 + rng() % 400;
      for (const Poly& f : enumerate_monic(ctx, 4, off, len)) joined.push_back(f);
      off += len;
    }
    CHECK(joined == all);
  }
}

TEST_CASE("monic rank round trip") {
  const FieldCtx ctx = make_field(7, 2);
  for (std::uint64_t r : {0ull, 1ull, 48ull, 49ull, 2400ull, 117648ull}) {
    CHECK(monic_rank(ctx, monic_from_rank(ctx, 3, r)) == r);
  }
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(F7(), P("T")));
  CHECK_FALSE(is_irreducible(F7(), P("T^2-2")));
  CHECK(is_irreducible(F7(), P("T^2+1")));
  CHECK_FALSE(is_irreducible(F7(), P("T^3-1")));
}

TEST_CASE("necklace counts match an irreducibility scan") {
  const FieldCtx& ctx = F7();
  CHECK(necklace_count(ctx, 1) == 7);
  CHECK(necklace_count(ctx, 2) == 21);
  CHECK(necklace_count(ctx, 3) == 112);
  for (int n = 1; n <= 5; ++n) {
    std::uint64_t found = 0;
    for (const Poly& f : enumerate_monic(ctx, n)) found += is_irreducible(ctx, f);
    CHECK(found == necklace_count(ctx, n));
    CHECK(static_cast<double>(necklace_count_ld(7, n)) == doctest::Approx(double(found)));
  }
}

TEST_CASE("factorization") {
  const FieldCtx& ctx = F7();
  const Factorization f = factor(ctx, P("T^3+T^2"));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == PrimePower{P("T"), 2});
  CHECK(f[1] == PrimePower{P("T+1"), 1});
  CHECK(factor(ctx, Poly::one()).empty());
  const Factorization g = factor(ctx, P("T^2+1"));
  REQUIRE(g.size() == 1);
  CHECK(g[0] == PrimePower{P("T^2+1"), 1});
}

TEST_CASE("factor inverts multiplication of random primes") {
  for (std::uint32_t p : {7u, 13u}) {
    const FieldCtx ctx = make_field(p);
    const auto primes = primes_up_to(ctx, 3);
    std::mt19937_64 rng(p);
    for (int trial = 0; trial < 60; ++trial) {
      const int k = 1 + static_cast<int>(rng() % 4);
      Poly f = Poly::one();
      for (int i = 0; i < k; ++i) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const Poly& q = primes[d][rng() % primes[d].size()];
        f = mul(ctx, f, q);
      }
      const Factorization fac = factor(ctx, f);
      CHECK(expand(ctx, fac) == f);
      for (const auto& pp : fac) CHECK(is_irreducible(ctx, pp.prime));
    }
  }
}

TEST_CASE("square-free test") {
  const FieldCtx& ctx = F7();
  CHECK_FALSE(is_squarefree(ctx, P("T^2")));
  CHECK(is_squarefree(ctx, P("T^2+T")));
  CHECK(is_squarefree(ctx, P("T^7-T")));
  for (int d = 1; d <= 4; ++d) {
    for (const Poly& f : enumerate_monic(ctx, d)) {
      if (is_squarefree(ctx, f) != oracle::squarefree_by_factor(ctx, f)) FAIL(format_poly(ctx, f));
    }
  }
}

TEST_CASE("square-free enumeration counts") {
  const FieldCtx& ctx = F7();
  CHECK(enumerate_squarefree(ctx, 1).size() == 7);
  CHECK(enumerate_squarefree(ctx, 2).size() == 42);
  CHECK(enumerate_squarefree(ctx, 4).size() == 2058);
  for (int d = 2; d <= 5; ++d) {
    CHECK(enumerate_squarefree(ctx, d).size() == ipow(7, d) - ipow(7, d - 1));
  }
}

TEST_CASE("cube-free decomposition") {
  const FieldCtx& ctx = F7();
  auto check = [&](const std::string& f, const std::string& a, const std::string& b, const std::string& c) {
    const CubeFreeDecomp d = cube_free_decompose(ctx, P(f));
    CHECK(d.f1 == P(a));
    CHECK(d.f2 == P(b));
    CHECK(d.f3 == P(c));
  };
  check("T^3", "1", "1", "T");
  check("T^3+2*T^2+T", "T", "T+1", "1");
  check("T^4", "T", "1", "T");
  for (const Poly& f : enumerate_monic(ctx, 4)) {
    const CubeFreeDecomp d = cube_free_decompose(ctx, f);
    CHECK(mul(ctx, mul(ctx, d.f1, pow(ctx, d.f2, 2)), pow(ctx, d.f3, 3)) == f);
    CHECK(gcd(ctx, d.f1, d.f2).is_one());
  }
}

TEST_CASE("polynomial text grammar") {
  const FieldCtx& ctx = F7();
  CHECK(P("T^4+3*T+5") == Poly{5, 3, 0, 0, 1});
  CHECK(P("T-1") == Poly{6, 1});
  CHECK(P("2*T^2 - 3") == Poly{4, 0, 2});
  CHECK(P("10") == Poly{3});
  CHECK(format_poly(ctx, Poly{5, 3, 0, 0, 1}) == "T^4+3*T+5");
  CHECK(format_poly(ctx, Poly()) == "0");
  CHECK_THROWS_AS(P("T^^2"), Error);
  for (const Poly& f : enumerate_monic(ctx, 3)) CHECK(P(format_poly(ctx, f)) == f);

  const FieldCtx f49 = make_field(7, 2);
  for (const Poly& f : enumerate_monic(f49, 2, 0, 400)) CHECK(parse_poly(f49, format_poly(f49, f)) == f);
}

TEST_CASE("polynomial arithmetic identities") {
  const FieldCtx ctx = make_field(13);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Poly::Storage a(1 + rng() % 6), b(1 + rng() % 4);
    for (auto& x : a) x = rng() % 13;
    for (auto& x : b) x = rng() % 13;
    b.back() = 1;
    const Poly A(a), B(b);
    const auto [qq, r] = divmod(ctx, A, B);
    CHECK(add(ctx, mul(ctx, qq, B), r) == A);
    CHECK(r.degree() < B.degree());
    const Poly g = gcd(ctx, A, B);
    if (!g.is_zero()) {
      CHECK(divides(ctx, g, A));
      CHECK(divides(ctx, g, B));
    }
  }
}

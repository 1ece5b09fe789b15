#include "cubic/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace cubic {

Poly Poly::monomial(Elem c, int k) {
  if (c == 0) return {};
  Storage s(static_cast<std::size_t>(k) + 1, 0);
  s[k] = c;
  return Poly(std::move(s));
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  }
  return false;
}

Poly add(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  const auto n = std::max(a.coeffs().size(), b.coeffs().size());
  Poly::Storage s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = ctx.add(a[i], b[i]);
  return Poly(std::move(s));
}

Poly sub(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  const auto n = std::max(a.coeffs().size(), b.coeffs().size());
  Poly::Storage s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = ctx.sub(a[i], b[i]);
  return Poly(std::move(s));
}

Poly mul(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  Poly::Storage s(x.size() + y.size() - 1, 0);
  if (ctx.degree() == 1) {
    // Prime field: accumulate in 64 bits, reduce once.
    const std::uint64_t p = ctx.p();
    boost::container::small_vector<std::uint64_t, 56> acc(s.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) acc[i + j] += std::uint64_t{x[i]} * y[j];
      if ((i & 63) == 63) {
        for (auto& v : acc) v %= p;
      }
    }
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = static_cast<Elem>(acc[k] % p);
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) s[i + j] = ctx.add(s[i + j], ctx.mul(x[i], y[j]));
    }
  }
  return Poly(std::move(s));
}

Poly scale(const FieldCtx& ctx, const Poly& a, Elem c) {
  Poly::Storage s(a.coeffs().size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = ctx.mul(a[i], c);
  return Poly(std::move(s));
}

Poly pow(const FieldCtx& ctx, const Poly& a, unsigned e) {
  Poly r = Poly::one(), b = a;
  while (e) {
    if (e & 1) r = mul(ctx, r, b);
    e >>= 1;
    if (e) b = mul(ctx, b, b);
  }
  return r;
}

void reduce_monic(const FieldCtx& ctx, Poly& a, const Poly& b) {
  const int db = b.degree();
  auto& x = a.mutable_coeffs();
  const auto& y = b.coeffs();
  if (db == 0) {
    x.clear();
    return;
  }
  for (int k = a.degree(); k >= db; --k) {
    const Elem c = x[k];
    if (c == 0) continue;
    const Elem nc = ctx.neg(c);
    for (int j = 0; j < db; ++j) {
      if (y[j] != 0) x[k - db + j] = ctx.add(x[k - db + j], ctx.mul(nc, y[j]));
    }
    x[k] = 0;
  }
  a.trim();
}

std::pair<Poly, Poly> divmod(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::ZeroDenominator, "polynomial division by zero");
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  const Elem inv_lead = ctx.inv(b.lead());
  Poly::Storage rem(a.coeffs().begin(), a.coeffs().end());
  Poly::Storage quo(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  for (int k = a.degree(); k >= db; --k) {
    const Elem c = ctx.mul(rem[k], inv_lead);
    if (c == 0) continue;
    quo[k - db] = c;
    const Elem nc = ctx.neg(c);
    for (int j = 0; j <= db; ++j) rem[k - db + j] = ctx.add(rem[k - db + j], ctx.mul(nc, b[j]));
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly mod(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  if (b.is_monic()) {
    Poly r = a;
    reduce_monic(ctx, r, b);
    return r;
  }
  return divmod(ctx, a, b).second;
}

Poly exact_quotient(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  auto [qt, r] = divmod(ctx, a, b);
  if (!r.is_zero()) throw Error(Errc::DomainError, "division is not exact");
  return qt;
}

bool divides(const FieldCtx& ctx, const Poly& d, const Poly& a) { return mod(ctx, a, d).is_zero(); }

Poly make_monic(const FieldCtx& ctx, const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(ctx, a, ctx.inv(a.lead()));
}

Poly gcd(const FieldCtx& ctx, Poly a, Poly b) {
  while (!b.is_zero()) {
    b = make_monic(ctx, b);
    reduce_monic(ctx, a, b);
    std::swap(a, b);
  }
  return make_monic(ctx, a);
}

Poly derivative(const FieldCtx& ctx, const Poly& a) {
  if (a.degree() <= 0) return {};
  Poly::Storage s(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) s[i - 1] = ctx.mul(a[i], ctx.from_int(static_cast<std::int64_t>(i)));
  return Poly(std::move(s));
}

Poly mul_mod(const FieldCtx& ctx, const Poly& a, const Poly& b, const Poly& m) {
  Poly r = mul(ctx, a, b);
  reduce_monic(ctx, r, m);
  return r;
}

Poly pow_mod(const FieldCtx& ctx, Poly base, std::uint64_t e, const Poly& m) {
  if (!m.is_monic()) throw Error(Errc::NotMonic, "pow_mod modulus must be monic");
  reduce_monic(ctx, base, m);
  Poly r = Poly::one();
  reduce_monic(ctx, r, m);
  while (e) {
    if (e & 1) r = mul_mod(ctx, r, base, m);
    e >>= 1;
    if (e) base = mul_mod(ctx, base, base, m);
  }
  return r;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  unsigned __int128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= base;
    if (r > (unsigned __int128)INT64_MAX) throw Error(Errc::Overflow, "q^n exceeds 63 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t monic_rank(const FieldCtx& ctx, const Poly& f) {
  if (!f.is_monic()) throw Error(Errc::NotMonic, "rank of a non-monic polynomial");
  std::uint64_t r = 0;
  for (int i = f.degree() - 1; i >= 0; --i) r = r * ctx.q() + f[i];
  return r;
}

Poly monic_from_rank(const FieldCtx& ctx, int degree, std::uint64_t rank) {
  Poly::Storage s(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i < degree; ++i) {
    s[i] = static_cast<Elem>(rank % ctx.q());
    rank /= ctx.q();
  }
  s[degree] = 1;
  return Poly(std::move(s));
}

// ------------------------------------------------------------- enumeration

MonicRange::iterator& MonicRange::iterator::operator++() {
  if (--left_ == 0) return *this;
  auto& c = cur_.mutable_coeffs();
  const Elem q = ctx_->q();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (++c[i] < q) break;
    c[i] = 0;
  }
  return *this;
}

MonicRange::iterator MonicRange::begin() const {
  iterator it;
  if (count_ == 0) return it;
  it.ctx_ = ctx_;
  it.cur_ = monic_from_rank(*ctx_, degree_, offset_);
  it.left_ = count_;
  return it;
}

MonicRange enumerate_monic(const FieldCtx& ctx, int n, std::uint64_t offset, std::uint64_t count) {
  const std::uint64_t total = ipow(ctx.q(), static_cast<unsigned>(n));
  if (offset >= total) return MonicRange(ctx, n, 0, 0);
  return MonicRange(ctx, n, offset, std::min(count, total - offset));
}

std::vector<Poly> enumerate_squarefree(const FieldCtx& ctx, int d, std::uint64_t offset, std::uint64_t count) {
  std::vector<Poly> out;
  std::uint64_t seen = 0;
  for (const Poly& f : enumerate_monic(ctx, d)) {
    if (!is_squarefree(ctx, f)) continue;
    if (seen++ < offset) continue;
    if (out.size() >= count) break;
    out.push_back(f);
  }
  return out;
}

// --------------------------------------------------------- factor structure

bool is_irreducible(const FieldCtx& ctx, const Poly& f) {
  if (f.degree() < 1) throw Error(Errc::DomainError, "irreducibility needs degree >= 1");
  const Poly g = make_monic(ctx, f);
  if (g.degree() == 1) return true;
  const Poly t = Poly::t();
  Poly h = t;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = pow_mod(ctx, h, ctx.q(), g);
    if (!gcd(ctx, g, sub(ctx, h, t)).is_one()) return false;
  }
  return true;
}

bool is_squarefree(const FieldCtx& ctx, const Poly& f) {
  if (f.degree() < 1) return true;
  return gcd(ctx, f, derivative(ctx, f)).is_one();
}

Factorization factor(const FieldCtx& ctx, const Poly& f) {
  if (!f.is_monic()) throw Error(Errc::NotMonic, "factor expects a monic polynomial");
  Factorization out;
  Poly rem = f;
  for (int d = 1; 2 * d <= rem.degree(); ++d) {
    // Every monic of degree d that still divides is prime: smaller primes are gone.
    for (const Poly& P : enumerate_monic(ctx, d)) {
      if (2 * d > rem.degree()) break;
      int e = 0;
      while (rem.degree() >= d) {
        auto [qt, r] = divmod(ctx, rem, P);
        if (!r.is_zero()) break;
        rem = std::move(qt);
        ++e;
      }
      if (e > 0) out.push_back({P, e});
    }
  }
  if (rem.degree() >= 1) out.push_back({rem, 1});
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

Poly expand(const FieldCtx& ctx, const Factorization& fac) {
  Poly r = Poly::one();
  for (const auto& [P, e] : fac) r = mul(ctx, r, pow(ctx, P, static_cast<unsigned>(e)));
  return r;
}

CubeFreeDecomp cube_free_decompose(const FieldCtx& ctx, const Poly& f) {
  CubeFreeDecomp out{Poly::one(), Poly::one(), Poly::one()};
  for (const auto& [P, e] : factor(ctx, f)) {
    if (e % 3 == 1) out.f1 = mul(ctx, out.f1, P);
    if (e % 3 == 2) out.f2 = mul(ctx, out.f2, P);
    if (e / 3 > 0) out.f3 = mul(ctx, out.f3, pow(ctx, P, static_cast<unsigned>(e / 3)));
  }
  return out;
}

namespace {

int mobius(int n) {
  int result = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

std::uint64_t necklace_count(const FieldCtx& ctx, int n) {
  if (n < 1) throw Error(Errc::DomainError, "necklace count needs n >= 1");
  __int128 sum = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) sum += static_cast<__int128>(mobius(d)) * ipow(ctx.q(), static_cast<unsigned>(n / d));
  }
  return static_cast<std::uint64_t>(sum / n);
}

long double necklace_count_ld(std::uint64_t q, int n) {
  long double sum = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) sum += mobius(d) * std::pow(static_cast<long double>(q), static_cast<long double>(n / d));
  }
  return sum / n;
}

std::vector<std::vector<Poly>> primes_up_to(const FieldCtx& ctx, int max_degree) {
  std::vector<std::vector<Poly>> out(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) {
    for (const Poly& f : enumerate_monic(ctx, d)) {
      if (is_irreducible(ctx, f)) out[d].push_back(f);
    }
  }
  return out;
}

// ---------------------------------------------------------------- e_q

Complex e_q(const FieldCtx& ctx, const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(Errc::ZeroDenominator, "e_q with zero denominator");
  if (num.is_zero()) return {1.0, 0.0};
  const int n = num.degree(), d = den.degree();
  // num/den = T^{n-d} * N(x)/D(x) with x = 1/T, N(x) = sum num_{n-i} x^i.
  const int want = n - d + 1;  // power of x carrying T^{-1}
  if (want < 0) return {1.0, 0.0};
  std::vector<Elem> inv(want + 1, 0);
  const Elem d0inv = ctx.inv(den.lead());
  inv[0] = d0inv;
  for (int k = 1; k <= want; ++k) {
    Elem acc = 0;
    for (int j = 1; j <= k && j <= d; ++j) acc = ctx.add(acc, ctx.mul(den[d - j], inv[k - j]));
    inv[k] = ctx.neg(ctx.mul(acc, d0inv));
  }
  Elem coef = 0;
  for (int i = 0; i <= want && i <= n; ++i) coef = ctx.add(coef, ctx.mul(num[n - i], inv[want - i]));
  return ctx.additive_root(trace_to_prime(ctx, coef));
}

Complex e_q_mod(const FieldCtx& ctx, const Poly& a, const Poly& F) {
  Poly r = a;
  reduce_monic(ctx, r, F);
  if (F.degree() < 1) return {1.0, 0.0};
  return ctx.additive_root(trace_to_prime(ctx, r[static_cast<std::size_t>(F.degree() - 1)]));
}

// --------------------------------------------------------------- text form

namespace {

struct Parser {
  const FieldCtx& ctx;
  std::string s;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::Parse, "cannot parse polynomial '" + s + "': " + why);
  }
  bool at_end() const { return i >= s.size(); }
  char peek() const { return at_end() ? '\0' : s[i]; }

  std::int64_t integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s[i++] - '0');
      if (v > (1LL << 40)) fail("integer too large");
    }
    return v;
  }

  Elem element() {
    if (peek() == '[') {
      ++i;
      std::vector<std::uint32_t> top_down;
      while (true) {
        top_down.push_back(static_cast<std::uint32_t>(integer() % ctx.p()));
        if (peek() == ',') {
          ++i;
          continue;
        }
        if (peek() == ']') {
          ++i;
          break;
        }
        fail("expected ',' or ']'");
      }
      if (top_down.size() > ctx.degree()) fail("too many basis coordinates");
      std::reverse(top_down.begin(), top_down.end());
      return ctx.from_coords(top_down);
    }
    return ctx.from_int(integer());
  }
};

}  // namespace

Poly parse_poly(const FieldCtx& ctx, const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  Parser ps{ctx, compact};
  if (compact.empty()) ps.fail("empty");
  Poly result;
  bool first = true;
  while (!ps.at_end()) {
    bool negative = false;
    if (ps.peek() == '+' || ps.peek() == '-') {
      negative = ps.peek() == '-';
      ++ps.i;
    } else if (!first) {
      ps.fail("expected '+' or '-'");
    }
    first = false;
    Elem coef = 1;
    bool has_coef = false;
    if (ps.peek() != 'T' && ps.peek() != 't') {
      coef = ps.element();
      has_coef = true;
      if (ps.peek() == '*') ++ps.i;
    }
    int power = 0;
    if (ps.peek() == 'T' || ps.peek() == 't') {
      ++ps.i;
      power = 1;
      if (ps.peek() == '^') {
        ++ps.i;
        power = static_cast<int>(ps.integer());
        if (power > 200) ps.fail("degree too large");
      }
    } else if (!has_coef) {
      ps.fail("expected term");
    }
    if (negative) coef = ctx.neg(coef);
    result = add(ctx, result, Poly::monomial(coef, power));
  }
  return result;
}

std::string format_poly(const FieldCtx& ctx, const Poly& f) {
  if (f.is_zero()) return "0";
  auto elem = [&](Elem c) {
    if (ctx.degree() == 1) return std::to_string(c);
    auto co = ctx.coords(c);
    std::string out = "[";
    for (std::size_t k = co.size(); k-- > 0;) {
      out += std::to_string(co[k]);
      if (k) out += ",";
    }
    return out + "]";
  };
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    const Elem c = f[k];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += elem(c);
      continue;
    }
    if (c != 1) out += elem(c) + "*";
    out += "T";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace cubic

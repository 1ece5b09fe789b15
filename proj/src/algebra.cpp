#include "cubic/algebra.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cubic {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::CongruenceViolation: return "CongruenceViolation";
    case Errc::NoIrreducibleFound: return "NoIrreducibleFound";
    case Errc::ElementNotInField: return "ElementNotInField";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotSquareFree: return "NotSquareFree";
    case Errc::NotMonic: return "NotMonic";
    case Errc::ConjugateMissing: return "ConjugateMissing";
    case Errc::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case Errc::WrongParity: return "WrongParity";
    case Errc::PrefactorPole: return "PrefactorPole";
    case Errc::DegreeTooLarge: return "DegreeTooLarge";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::PoleAtOne: return "PoleAtOne";
    case Errc::DomainError: return "DomainError";
    case Errc::IsCube: return "IsCube";
    case Errc::SampleTooLarge: return "SampleTooLarge";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BadSplit: return "BadSplit";
    case Errc::PartitionTooLarge: return "PartitionTooLarge";
    case Errc::Overflow: return "Overflow";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Eisenstein

Eisenstein Eisenstein::from(Mu3 v) {
  if (v.is_zero()) return {};
  return one().times_xi(v.exponent());
}

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(Errc::Overflow, "Eisenstein component exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace

std::int64_t Eisenstein::norm() const {
  const __int128 a = x, b = y;
  return narrow(a * a - a * b + b * b);
}

// (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2,  w^2 = -1 - w
Eisenstein operator*(const Eisenstein& l, const Eisenstein& r) {
  const __int128 a = l.x, b = l.y, c = r.x, d = r.y;
  const __int128 bd = b * d;
  return {narrow(a * c - bd), narrow(a * d + b * c - bd)};
}

Eisenstein operator*(std::int64_t k, const Eisenstein& z) {
  return {narrow(static_cast<__int128>(k) * z.x), narrow(static_cast<__int128>(k) * z.y)};
}

Eisenstein Eisenstein::exact_div(std::int64_t d) const {
  if (d == 0 || x % d != 0 || y % d != 0) {
    throw Error(Errc::DomainError, "Eisenstein division is not exact");
  }
  return {x / d, y / d};
}

Eisenstein Eisenstein::exact_div(const Eisenstein& d) const {
  const std::int64_t n = d.norm();
  if (n == 0) throw Error(Errc::DomainError, "division by zero Eisenstein integer");
  return (*this * d.conj()).exact_div(n);
}

Complex eisenstein_to_complex(const Eisenstein& z) {
  constexpr double half_sqrt3 = 0.86602540378443864676;
  return {static_cast<double>(z.x) - 0.5 * static_cast<double>(z.y),
          half_sqrt3 * static_cast<double>(z.y)};
}

// ------------------------------------------------------------------- helpers

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Product of two reduced coordinate vectors modulo the monic `mod` over F_p.
Coeffs mul_mod_p(const Coeffs& x, const Coeffs& y, const Coeffs& mod, std::uint32_t p) {
  const std::size_t a = mod.size() - 1;
  std::vector<std::uint64_t> prod(2 * a, 0);
  for (std::size_t i = 0; i < a; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
  }
  for (std::size_t k = 2 * a - 1; k >= a; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t j = 0; j < a; ++j) {
      const std::uint64_t sub = (c * mod[j]) % p;
      prod[k - a + j] = (prod[k - a + j] + p - sub) % p;
    }
  }
  Coeffs out(a);
  for (std::size_t i = 0; i < a; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

Coeffs digits(std::uint64_t r, std::uint32_t p, std::size_t n) {
  Coeffs c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = static_cast<std::uint32_t>(r % p);
    r /= p;
  }
  return c;
}

// True iff the monic `f` (low to high) has a monic factor of degree 1..deg/2.
bool has_small_factor(const Coeffs& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t r = 0; r < count; ++r) {
      Coeffs g = digits(r, p, d);
      g.push_back(1);
      std::vector<std::int64_t> rem(f.begin(), f.end());
      for (std::size_t k = n; k >= d; --k) {
        const std::int64_t c = rem[k] % p;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= d; ++j) {
          rem[k - d + j] = ((rem[k - d + j] - c * g[j]) % p + p) % p;
        }
      }
      bool zero = true;
      for (std::size_t k = 0; k < d; ++k) zero = zero && (rem[k] % p == 0);
      if (zero) return true;
    }
  }
  return false;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

// ------------------------------------------------------------------ FieldCtx

FieldCtx make_field(std::uint32_t p, std::uint32_t a) {
  if (!is_prime_u64(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (a == 0) throw Error(Errc::DomainError, "extension degree must be >= 1");
  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < a; ++i) q64 *= p;
  if (q64 % 6 != 1) {
    throw Error(Errc::CongruenceViolation, "q = " + std::to_string(q64) + " is not 1 mod 6 (q ≢ 1 mod 6)");
  }
  if (q64 > (1u << 20)) throw Error(Errc::DomainError, "q too large for table-driven arithmetic");

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.a_ = a;
  ctx.q_ = static_cast<std::uint32_t>(q64);
  const std::uint32_t q = ctx.q_;

  // Smallest monic irreducible, rank = sum c_i p^i over the non-leading coefficients.
  if (a == 1) {
    ctx.modulus_ = {0, 1};
  } else {
    bool found = false;
    for (std::uint64_t r = 0; r < q64 && !found; ++r) {
      Coeffs m = digits(r, p, a);
      m.push_back(1);
      if (m[0] != 0 && !has_small_factor(m, p)) {
        ctx.modulus_ = m;
        found = true;
      }
    }
    if (!found) throw Error(Errc::NoIrreducibleFound, "no irreducible of degree " + std::to_string(a));
  }

  auto slow_mul = [&](Elem x, Elem y) -> Elem {
    if (a == 1) return static_cast<Elem>((std::uint64_t{x} * y) % p);
    return static_cast<Elem>([&] {
      const Coeffs c = mul_mod_p(digits(x, p, a), digits(y, p, a), ctx.modulus_, p);
      std::uint64_t v = 0;
      for (std::size_t i = a; i-- > 0;) v = v * p + c[i];
      return v;
    }());
  };

  // Smallest element of full order q - 1.
  const auto factors = prime_factors(q - 1);
  auto slow_pow = [&](Elem x, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, x);
      x = slow_mul(x, x);
      e >>= 1;
    }
    return r;
  };
  for (Elem g = 2; g < q; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(g, (q - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      ctx.gen_ = g;
      break;
    }
  }
  if (ctx.gen_ == 0) throw Error(Errc::DomainError, "no primitive root found");

  ctx.exp_.resize(2 * (q - 1));
  ctx.log_.assign(q, 0);
  Elem x = 1;
  for (std::uint32_t k = 0; k < q - 1; ++k) {
    ctx.exp_[k] = x;
    ctx.log_[x] = k;
    x = slow_mul(x, ctx.gen_);
  }
  for (std::uint32_t k = q - 1; k < 2 * (q - 1); ++k) ctx.exp_[k] = ctx.exp_[k - (q - 1)];
  ctx.zeta_ = ctx.exp_[(q - 1) / 3];

  ctx.neg_.resize(q);
  for (Elem e = 0; e < q; ++e) {
    Coeffs c = digits(e, p, a);
    std::uint64_t v = 0;
    for (std::size_t i = a; i-- > 0;) v = v * p + (c[i] == 0 ? 0 : p - c[i]);
    ctx.neg_[e] = static_cast<Elem>(v);
  }
  if (a > 1 && q <= 1024) {
    std::vector<Elem> table(std::size_t{q} * q);
    for (Elem u = 0; u < q; ++u) {
      for (Elem v = 0; v < q; ++v) table[std::size_t{u} * q + v] = ctx.add_slow(u, v);
    }
    ctx.add_table_ = std::move(table);
  }

  ctx.roots_p_.resize(p);
  for (std::uint32_t k = 0; k < p; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
    ctx.roots_p_[k] = {std::cos(t), std::sin(t)};
  }
  return ctx;
}

Elem FieldCtx::add_slow(Elem x, Elem y) const {
  if (!add_table_.empty()) return add_table_[std::size_t{x} * q_ + y];
  std::uint64_t v = 0, scale = 1;
  for (std::uint32_t i = 0; i < a_; ++i) {
    v += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(v);
}

Elem FieldCtx::inv(Elem x) const {
  if (x == 0) throw Error(Errc::DomainError, "inverse of zero");
  const std::uint32_t l = log_[x];
  return exp_[(q_ - 1 - l) % (q_ - 1)];
}

Elem FieldCtx::pow(Elem x, std::uint64_t e) const {
  if (e == 0) return 1;
  if (x == 0) return 0;
  const std::uint64_t l = (static_cast<std::uint64_t>(log_[x]) * (e % (q_ - 1))) % (q_ - 1);
  return exp_[l];
}

Elem FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> FieldCtx::coords(Elem x) const { return digits(x, p_, a_); }

Elem FieldCtx::from_coords(const std::vector<std::uint32_t>& c) const {
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw Error(Errc::ElementNotInField, "coordinate not reduced mod p");
    v = v * p_ + c[i];
  }
  if (v >= q_) throw Error(Errc::ElementNotInField, "too many coordinates");
  return static_cast<Elem>(v);
}

int FieldCtx::omega_exponent(Elem cube_root) const {
  if (cube_root == 1) return 0;
  if (cube_root == zeta_) return 1;
  if (cube_root == mul(zeta_, zeta_)) return 2;
  throw Error(Errc::DomainError, "not a cube root of unity");
}

Mu3 chi3(const FieldCtx& ctx, Elem a) {
  if (!ctx.contains(a)) throw Error(Errc::ElementNotInField, "element index out of range");
  if (a == 0) return Mu3::zero();
  return Mu3::unit(ctx.omega_exponent(ctx.pow(a, (ctx.q() - 1) / 3)));
}

std::uint32_t trace_to_prime(const FieldCtx& ctx, Elem a) {
  Elem t = 0, x = a;
  for (std::uint32_t i = 0; i < ctx.degree(); ++i) {
    t = ctx.add(t, x);
    x = ctx.pow(x, ctx.p());
  }
  // The trace lies in the prime subfield, whose elements have index < p.
  return t;
}

}  // namespace cubic

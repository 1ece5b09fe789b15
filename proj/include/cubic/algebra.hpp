#ifndef CUBIC_ALGEBRA_HPP
#define CUBIC_ALGEBRA_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "cubic/error.hpp"

namespace cubic {

using Complex = std::complex<double>;

/// Element of F_q stored as its index: the coordinates (c_0, ..., c_{a-1}) in
/// the polynomial basis over F_p packed as sum c_j p^j. Index 0 is zero and
/// index 1 is one; in the prime field the index is the residue itself.
using Elem = std::uint32_t;

/// Value of a cubic symbol: Zero, or the exponent k of xi_3^k.
class Mu3 {
 public:
  constexpr Mu3() = default;

  static constexpr Mu3 zero() { return Mu3(-1); }
  static constexpr Mu3 unit(int k) { return Mu3(static_cast<std::int8_t>(((k % 3) + 3) % 3)); }

  constexpr bool is_zero() const { return k_ < 0; }
  /// Exponent in {0,1,2}; meaningless when is_zero().
  constexpr int exponent() const { return k_; }

  constexpr Mu3 conj() const { return is_zero() ? *this : unit(-k_); }
  constexpr Mu3 pow(int e) const {
    if (is_zero()) return e == 0 ? unit(0) : *this;
    return unit(k_ * e);
  }

  friend constexpr Mu3 operator*(Mu3 a, Mu3 b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return unit(a.k_ + b.k_);
  }
  friend constexpr bool operator==(Mu3, Mu3) = default;

 private:
  constexpr explicit Mu3(std::int8_t k) : k_(k) {}
  std::int8_t k_ = 0;
};

/// Exact element x + y*xi_3 of Z[xi_3], xi_3 = e^{2 pi i/3}.
struct Eisenstein {
  std::int64_t x = 0;
  std::int64_t y = 0;

  static constexpr Eisenstein one() { return {1, 0}; }
  static constexpr Eisenstein xi() { return {0, 1}; }
  static Eisenstein from(Mu3 v);

  constexpr bool is_zero() const { return x == 0 && y == 0; }
  constexpr Eisenstein conj() const { return {x - y, -y}; }
  /// x^2 - xy + y^2 (exact; throws Overflow past 64 bits).
  std::int64_t norm() const;

  /// this * xi_3^k, computed without multiplication.
  constexpr Eisenstein times_xi(int k) const {
    switch (((k % 3) + 3) % 3) {
      case 1: return {-y, x - y};
      case 2: return {y - x, -x};
      default: return *this;
    }
  }

  Eisenstein& operator+=(const Eisenstein& o) { x += o.x; y += o.y; return *this; }
  Eisenstein& operator-=(const Eisenstein& o) { x -= o.x; y -= o.y; return *this; }
  friend Eisenstein operator+(Eisenstein a, const Eisenstein& b) { return a += b; }
  friend Eisenstein operator-(Eisenstein a, const Eisenstein& b) { return a -= b; }
  friend constexpr Eisenstein operator-(const Eisenstein& a) { return {-a.x, -a.y}; }
  friend Eisenstein operator*(const Eisenstein& a, const Eisenstein& b);
  friend Eisenstein operator*(std::int64_t k, const Eisenstein& a);
  friend constexpr bool operator==(const Eisenstein&, const Eisenstein&) = default;

  /// Exact division; throws DomainError if the quotient is not in Z[xi_3].
  Eisenstein exact_div(const Eisenstein& d) const;
  Eisenstein exact_div(std::int64_t d) const;
};

Complex eisenstein_to_complex(const Eisenstein& z);

/// The field F_q, q = p^a with q = 1 mod 6, together with a fixed primitive
/// root and the labeling of the cube roots of unity. Immutable once built.
class FieldCtx {
 public:
  std::uint32_t p() const { return p_; }
  std::uint32_t degree() const { return a_; }
  std::uint32_t q() const { return q_; }
  Elem generator() const { return gen_; }
  /// Monic irreducible over F_p, coefficients low to high (length a+1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool contains(Elem x) const { return x < q_; }

  Elem add(Elem x, Elem y) const {
    if (a_ == 1) {
      const Elem s = x + y;
      return s >= p_ ? s - p_ : s;
    }
    return add_slow(x, y);
  }
  Elem neg(Elem x) const {
    if (a_ == 1) return x == 0 ? 0 : p_ - x;
    return neg_[x];
  }
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  Elem mul(Elem x, Elem y) const {
    if (a_ == 1) return static_cast<Elem>((std::uint64_t{x} * y) % p_);
    if (x == 0 || y == 0) return 0;
    return exp_[log_[x] + log_[y]];
  }
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, std::uint64_t e) const;
  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(std::int64_t v) const;

  /// Discrete log base generator(); x must be nonzero.
  std::uint32_t log(Elem x) const { return log_[x]; }

  /// Coordinates (c_0, ..., c_{a-1}) over F_p.
  std::vector<std::uint32_t> coords(Elem x) const;
  Elem from_coords(const std::vector<std::uint32_t>& c) const;

  /// Omega exponent of a cube root of unity of F_q^*.
  int omega_exponent(Elem cube_root) const;

  /// Precomputed e^{2 pi i k/p}.
  Complex additive_root(std::uint32_t k) const { return roots_p_[k % p_]; }

  friend FieldCtx make_field(std::uint32_t p, std::uint32_t a);

 private:
  FieldCtx() = default;
  Elem add_slow(Elem x, Elem y) const;

  std::uint32_t p_ = 0, a_ = 0, q_ = 0;
  Elem gen_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;          // 2(q-1) entries
  std::vector<std::uint32_t> log_;  // q entries, log_[0] unused
  std::vector<Elem> neg_;
  std::vector<Elem> add_table_;    // q*q entries for small extension fields
  Elem zeta_ = 1;                  // generator^((q-1)/3)
  std::vector<Complex> roots_p_;
};

/// Builds F_q for q = p^a. Throws NotPrime or CongruenceViolation.
FieldCtx make_field(std::uint32_t p, std::uint32_t a = 1);

/// Cubic residue symbol of F_q^*: Omega(a^{(q-1)/3}).
Mu3 chi3(const FieldCtx& ctx, Elem a);

/// tr_{F_q/F_p}(a) as a residue in [0, p).
std::uint32_t trace_to_prime(const FieldCtx& ctx, Elem a);

bool is_prime_u64(std::uint64_t n);

}  // namespace cubic

#endif  // CUBIC_ALGEBRA_HPP

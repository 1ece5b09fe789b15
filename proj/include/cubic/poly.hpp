#ifndef CUBIC_POLY_HPP
#define CUBIC_POLY_HPP

#include <cstdint>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "cubic/algebra.hpp"

namespace cubic {

/// Polynomial over F_q, coefficients stored low to high with no leading
/// zeros. The zero polynomial has degree -1. Most of the library works with
/// monic polynomials; operations that need monicity check it.
class Poly {
 public:
  using Storage = boost::container::small_vector<Elem, 28>;

  Poly() = default;
  explicit Poly(Storage c) : c_(std::move(c)) { trim(); }
  Poly(std::initializer_list<Elem> c) : c_(c) { trim(); }

  static Poly constant(Elem c) { return c == 0 ? Poly() : Poly({c}); }
  static Poly one() { return Poly({1}); }
  static Poly t() { return Poly({0, 1}); }
  /// c * T^k
  static Poly monomial(Elem c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const Storage& coeffs() const { return c_; }
  Storage& mutable_coeffs() { return c_; }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  friend bool operator==(const Poly&, const Poly&) = default;
  /// Canonical order: degree first, then coefficient tuple from the top down
  /// (constant term last).
  friend bool operator<(const Poly& a, const Poly& b);

 private:
  Storage c_;
};

Poly add(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly sub(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly mul(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly scale(const FieldCtx& ctx, const Poly& a, Elem c);
Poly pow(const FieldCtx& ctx, const Poly& a, unsigned e);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly mod(const FieldCtx& ctx, const Poly& a, const Poly& b);
/// a mod b in place, b monic.
void reduce_monic(const FieldCtx& ctx, Poly& a, const Poly& b);
/// Divides by b, which must divide a exactly.
Poly exact_quotient(const FieldCtx& ctx, const Poly& a, const Poly& b);
bool divides(const FieldCtx& ctx, const Poly& d, const Poly& a);
Poly make_monic(const FieldCtx& ctx, const Poly& a);
/// Monic gcd (zero only when both inputs are zero).
Poly gcd(const FieldCtx& ctx, Poly a, Poly b);
Poly derivative(const FieldCtx& ctx, const Poly& a);
/// base^e mod m (m monic, degree >= 1).
Poly pow_mod(const FieldCtx& ctx, Poly base, std::uint64_t e, const Poly& m);
Poly mul_mod(const FieldCtx& ctx, const Poly& a, const Poly& b, const Poly& m);

/// q^n, throwing Overflow past 2^63.
std::uint64_t ipow(std::uint64_t base, unsigned e);

/// Rank of a monic polynomial among the monics of its degree: sum c_i q^i over
/// the non-leading coefficients.
std::uint64_t monic_rank(const FieldCtx& ctx, const Poly& f);
Poly monic_from_rank(const FieldCtx& ctx, int degree, std::uint64_t rank);

/// Lazily enumerated monics of one degree, lexicographic with the constant
/// term last, restartable from any offset.
class MonicRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Poly;
    using difference_type = std::ptrdiff_t;
    using pointer = const Poly*;
    using reference = const Poly&;

    iterator() = default;
    const Poly& operator*() const { return cur_; }
    const Poly* operator->() const { return &cur_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.left_ == b.left_; }

   private:
    friend class MonicRange;
    const FieldCtx* ctx_ = nullptr;
    Poly cur_;
    std::uint64_t left_ = 0;
  };

  MonicRange(const FieldCtx& ctx, int degree, std::uint64_t offset, std::uint64_t count)
      : ctx_(&ctx), degree_(degree), offset_(offset), count_(count) {}

  iterator begin() const;
  iterator end() const { return iterator(); }
  std::uint64_t size() const { return count_; }

 private:
  const FieldCtx* ctx_;
  int degree_;
  std::uint64_t offset_;
  std::uint64_t count_;
};

/// Monics of degree n ranked [offset, offset + count), clipped to q^n.
MonicRange enumerate_monic(const FieldCtx& ctx, int n, std::uint64_t offset = 0,
                           std::uint64_t count = UINT64_MAX);

/// Square-free monics of degree d in rank order (filter over enumerate_monic).
std::vector<Poly> enumerate_squarefree(const FieldCtx& ctx, int d, std::uint64_t offset = 0,
                                       std::uint64_t count = UINT64_MAX);

bool is_irreducible(const FieldCtx& ctx, const Poly& f);
bool is_squarefree(const FieldCtx& ctx, const Poly& f);

struct PrimePower {
  Poly prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};
using Factorization = std::vector<PrimePower>;

/// Factorization of a monic polynomial by trial division, primes in rank order.
Factorization factor(const FieldCtx& ctx, const Poly& f);
Poly expand(const FieldCtx& ctx, const Factorization& fac);

/// f = f1 f2^2 f3^3 with f1, f2 square-free and coprime.
struct CubeFreeDecomp {
  Poly f1, f2, f3;
};
CubeFreeDecomp cube_free_decompose(const FieldCtx& ctx, const Poly& f);

/// Number of monic irreducibles of degree n (exact; throws Overflow if q^n
/// exceeds 64 bits).
std::uint64_t necklace_count(const FieldCtx& ctx, int n);
/// Same count in extended precision, for Euler products far past 64 bits.
long double necklace_count_ld(std::uint64_t q, int n);

/// All monic irreducibles of degree <= max_degree, grouped by degree.
std::vector<std::vector<Poly>> primes_up_to(const FieldCtx& ctx, int max_degree);

/// e_q(num/den): exp(2 pi i tr(a_1)/p) with a_1 the 1/T coefficient of the
/// Laurent expansion at infinity.
Complex e_q(const FieldCtx& ctx, const Poly& num, const Poly& den);
/// e_q(a/F) for F monic via the top coefficient of a mod F.
Complex e_q_mod(const FieldCtx& ctx, const Poly& a, const Poly& F);

/// Text grammar: `T^4+3*T+5`; extension coefficients as `[c_{a-1},...,c_0]`.
Poly parse_poly(const FieldCtx& ctx, const std::string& text);
std::string format_poly(const FieldCtx& ctx, const Poly& f);

}  // namespace cubic

#endif  // CUBIC_POLY_HPP

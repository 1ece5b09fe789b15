#ifndef CUBIC_CHARACTERS_HPP
#define CUBIC_CHARACTERS_HPP

#include <functional>

#include "cubic/poly.hpp"

namespace cubic {

/// (a/P)_3 for a prime P by direct exponentiation a^{(|P|-1)/3} mod P.
/// Reference oracle for the faster paths. Throws NotIrreducible.
Mu3 symbol_direct(const FieldCtx& ctx, const Poly& a, const Poly& P);

/// Cubic residue symbol (a/M)_3 for any monic modulus M, extended to
/// composite M multiplicatively. Evaluated by the reciprocity-accelerated
/// Euclidean algorithm (valid since q = 1 mod 6); never factors M.
Mu3 residue_symbol(const FieldCtx& ctx, Poly a, Poly M);

/// (a/F)_3 for square-free monic F. Throws NotSquareFree.
Mu3 symbol(const FieldCtx& ctx, const Poly& a, const Poly& F);

/// chi_F for a monic F given by its factorization: prod chi_P^{e_P}. Used for
/// non-square-free moduli and as an independent route to residue_symbol.
Mu3 symbol_by_factors(const FieldCtx& ctx, const Poly& a, const Factorization& F);

/// chi_F^e with F square-free monic and e in {1, 2} (e = 2 is the conjugate).
class Character {
 public:
  Character(const FieldCtx& ctx, Poly modulus, int power = 1);

  const Poly& modulus() const { return F_; }
  int power() const { return e_; }
  int conductor_degree() const { return F_.degree(); }
  /// 0 iff deg F = 0 mod 3 (even), else 1.
  int delta() const { return F_.degree() % 3 == 0 ? 0 : 1; }
  int genus() const { return F_.degree() - 2 + delta(); }
  Character conj() const { return Character(F_, 3 - e_, Unchecked{}); }

  friend bool operator==(const Character&, const Character&) = default;

 private:
  struct Unchecked {};
  Character(Poly F, int e, Unchecked) : F_(std::move(F)), e_(e) {}
  Poly F_;
  int e_;
};

Mu3 chiF(const FieldCtx& ctx, const Character& chi, const Poly& a);

/// Size of the family h(3g): q^{3g+1} - q^{3g} for g >= 1, and q at g = 0.
std::uint64_t family_size(const FieldCtx& ctx, int g);

/// Visits chi_F (e = 1) for every square-free F of degree 3g+1, in rank order.
void family_H3g(const FieldCtx& ctx, int g, const std::function<void(const Character&)>& visit);

}  // namespace cubic

#endif  // CUBIC_CHARACTERS_HPP

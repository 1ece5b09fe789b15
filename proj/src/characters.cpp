#include "cubic/characters.hpp"

namespace cubic {

Mu3 symbol_direct(const FieldCtx& ctx, const Poly& a, const Poly& P) {
  if (!P.is_monic() || P.degree() < 1 || !is_irreducible(ctx, P)) {
    throw Error(Errc::NotIrreducible, "symbol_direct needs a monic prime modulus");
  }
  Poly r = a;
  reduce_monic(ctx, r, P);
  if (r.is_zero()) return Mu3::zero();
  const std::uint64_t e = (ipow(ctx.q(), static_cast<unsigned>(P.degree())) - 1) / 3;
  const Poly v = pow_mod(ctx, r, e, P);
  if (v.degree() != 0) throw Error(Errc::DomainError, "power residue is not a constant");
  return Mu3::unit(ctx.omega_exponent(v[0]));
}

Mu3 residue_symbol(const FieldCtx& ctx, Poly a, Poly M) {
  if (!M.is_monic()) throw Error(Errc::NotMonic, "residue symbol modulus must be monic");
  int k = 0;
  while (true) {
    if (M.degree() == 0) return Mu3::unit(k);
    reduce_monic(ctx, a, M);
    if (a.is_zero()) return Mu3::zero();
    const Elem c = a.lead();
    if (c != 1) {
      // (c/M)_3 = chi_3(c)^{deg M}, and chi_3(g^L) = xi_3^L for the fixed generator g.
      k += static_cast<int>(ctx.log(c) % 3) * M.degree();
      a = scale(ctx, a, ctx.inv(c));
    }
    if (a.degree() == 0) return Mu3::unit(k);
    std::swap(a, M);
  }
}

Mu3 symbol(const FieldCtx& ctx, const Poly& a, const Poly& F) {
  if (!F.is_monic() || !is_squarefree(ctx, F)) {
    throw Error(Errc::NotSquareFree, "symbol modulus must be square-free and monic");
  }
  return residue_symbol(ctx, a, F);
}

Mu3 symbol_by_factors(const FieldCtx& ctx, const Poly& a, const Factorization& F) {
  Mu3 v = Mu3::unit(0);
  for (const auto& [P, e] : F) v = v * symbol_direct(ctx, a, P).pow(e);
  return v;
}

Character::Character(const FieldCtx& ctx, Poly modulus, int power) : F_(std::move(modulus)), e_(power) {
  if (e_ != 1 && e_ != 2) throw Error(Errc::DomainError, "character power must be 1 or 2");
  if (!F_.is_monic() || !is_squarefree(ctx, F_)) {
    throw Error(Errc::NotSquareFree, "character modulus must be square-free and monic");
  }
}

Mu3 chiF(const FieldCtx& ctx, const Character& chi, const Poly& a) {
  return residue_symbol(ctx, a, chi.modulus()).pow(chi.power());
}

std::uint64_t family_size(const FieldCtx& ctx, int g) {
  const auto d = static_cast<unsigned>(3 * g + 1);
  // q^d - q^{d-1} holds from d = 2 on; every monic of degree 1 is square-free
  if (d == 1) return ctx.q();
  return ipow(ctx.q(), d) - ipow(ctx.q(), d - 1);
}

void family_H3g(const FieldCtx& ctx, int g, const std::function<void(const Character&)>& visit) {
  if (g < 0) throw Error(Errc::DomainError, "genus index must be >= 0");
  for (const Poly& F : enumerate_monic(ctx, 3 * g + 1)) {
    if (is_squarefree(ctx, F)) visit(Character(ctx, F, 1));
  }
}

}  // namespace cubic

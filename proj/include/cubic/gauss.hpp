#ifndef CUBIC_GAUSS_HPP
#define CUBIC_GAUSS_HPP

#include <cmath>

#include "cubic/characters.hpp"

namespace cubic {

/// Field Gauss sum of chi_3^j over F_q^*. For j = 0 this is the raw sum -1.
Complex tau_chi3(const FieldCtx& ctx, int j);
/// tau(chi_3^j)/sqrt(q), with epsilon = 1 for the trivial character.
Complex epsilon(const FieldCtx& ctx, int j);

struct GaussValue {
  Complex value;
  int modulus_degree = 0;
  /// |G| / q^{deg F / 2}
  double normalized_abs(std::uint32_t q) const { return std::abs(value) / std::pow(double(q), modulus_degree / 2.0); }
};

constexpr int kMaxGaussDegree = 8;

/// G(V, F) = sum_{a mod F} chi_F(a)^power e_q(aV/F) by direct summation over
/// all q^{deg F} residues. chi_F for non-square-free F is prod chi_P^{e_P}.
/// G(V, 1) = 1. Throws DegreeTooLarge past degree 8.
GaussValue gauss_sum(const FieldCtx& ctx, const Poly& V, const Poly& F, int power = 1);

/// G(1, P) for a prime P from the q^{deg P - 1} monics of degree deg P - 1:
/// G(1, P) = S (tau(chi_3^d) - sum_{c != 0} chi_3(c)^d), S = sum_m chi_P(m).
Complex prime_gauss_sum(const FieldCtx& ctx, const Poly& P);

/// conj(chi_F(f)) G(V, F) = G(fV, F). With conjugate = false the left side
/// uses chi_F(f) instead (negative control). Throws NotCoprime.
bool check_twist(const FieldCtx& ctx, const Poly& f, const Poly& V, const Poly& F, bool conjugate = true);

/// G(V, F1 F2) = chi_{F1}(F2)^2 G(V, F1) G(V, F2). Throws NotCoprime.
bool check_mult(const FieldCtx& ctx, const Poly& V, const Poly& F1, const Poly& F2);

/// conj(epsilon(chi_3^{deg h})) G(chi) / q^{deg h/2} for the primitive
/// character chi of conductor h.
Complex omega_from_gauss(const FieldCtx& ctx, const Character& chi);

/// 1, tau(chi_3)/q^{1/3} or 0 as d + deg f = 0, 1, 2 mod 3.
Complex rho(const FieldCtx& ctx, int d, const Poly& f);

struct DualMainTerm {
  int d = 0;
  Poly f;
  Complex exact;
  Complex main;
  double residual = 0.0;
};

/// sum over F in M_d coprime to f of G(f, F), against its predicted main term.
/// Only square-free F contribute; each G(f, F) is assembled from memoized
/// prime Gauss sums. Throws DegreeTooLarge for d > 5 or deg f > 2.
DualMainTerm dual_main_term_compare(const FieldCtx& ctx, const Poly& f, int d, unsigned threads = 1);

}  // namespace cubic

#endif  // CUBIC_GAUSS_HPP

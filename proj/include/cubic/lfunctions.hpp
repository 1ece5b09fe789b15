#ifndef CUBIC_LFUNCTIONS_HPP
#define CUBIC_LFUNCTIONS_HPP

#include <vector>

#include "cubic/characters.hpp"

namespace cubic {

/// Exact coefficients of one character's L-function.
///
/// a holds L(u, chi) = sum a_n u^n (n = 0..g+1-delta), b holds the completed
/// L_C(u, chi) = L(u, chi)/(1-u)^{1-delta} (n = 0..g). Both are exact sums of
/// cube roots of unity. omega is the root number b_g / q^{g/2}.
struct LData {
  Character chi;
  std::uint32_t q = 0;
  int genus = 0;
  int delta = 1;
  std::vector<Eisenstein> a;
  std::vector<Eisenstein> b;
  Complex omega{1.0, 0.0};
};

/// a_n = sum over monic f of degree n of chi(f), directly from the
/// definition. Degree classes are split into chunks for `threads` workers;
/// the exact reduction makes the result independent of the split.
LData compute_coeffs(const FieldCtx& ctx, const Character& chi, unsigned threads = 1);

/// Builds LData from exact a_0..a_{g+1-delta}.
LData ldata_from_a(const FieldCtx& ctx, const Character& chi, std::vector<Eisenstein> a);

/// Primes up to some degree, shared read-only by the Euler-product path.
class PrimeTable {
 public:
  PrimeTable(const FieldCtx& ctx, int max_degree);
  int max_degree() const { return static_cast<int>(by_degree_.size()) - 1; }
  const std::vector<Poly>& of_degree(int d) const { return by_degree_[d]; }

 private:
  std::vector<std::vector<Poly>> by_degree_;
};

/// Smallest number of leading coefficients that determines the rest through
/// the functional equation: ceil(g/2) for the completed polynomial.
int euler_degree_needed(const Character& chi);

/// Same LData as compute_coeffs, built from the Euler product over primes of
/// degree <= ceil(g/2) and completed exactly with the functional equation
/// q^{g-n} b_n(chi) = b_g(chi) conj(b_{g-n}(chi)). Falls back to direct sums
/// for one more degree if the middle coefficients vanish.
LData compute_coeffs_euler(const FieldCtx& ctx, const Character& chi, const PrimeTable& primes);

/// a_0..a_m of L(u, chi) from the Euler product prod_P (1 - chi(P) u^deg P)^{-1}.
std::vector<Eisenstein> euler_coeffs(const FieldCtx& ctx, const Character& chi, const PrimeTable& primes, int m);

/// Exact conjugate data: a_n(conj chi) = conj(a_n(chi)).
LData conjugate(const LData& L);

/// L(s, chi) = sum a_n q^{-sn}.
Complex eval_L(const LData& L, double s);
/// Same value by Horner's rule.
Complex eval_L_horner(const LData& L, double s);

/// Exact functional equation q^{g-n} b_n(chi) = b_g(chi) b_{g-n}(conj chi) for
/// all 0 <= n <= g. Throws ConjugateMissing unless Lbar belongs to conj chi.
bool check_fe_exact(const LData& L, const LData& Lbar);

/// max over roots u of L_C of ||u| - q^{-1/2}| / q^{-1/2}; 0 for genus 0.
double check_rh_roots(const LData& L);

struct AfeParts {
  Complex principal;
  Complex dual;
  Complex total() const { return principal + dual; }
};

/// Odd approximate functional equation split at A (0 <= A <= g).
AfeParts afe_odd(const LData& L, double s, int A);

/// The four bracketed sums of the even approximate functional equation with
/// their prefactors.
struct EvenAfeParts {
  Complex principal_upper;  // sum over M_{<=A+1} chi(f)/|f|^s
  Complex principal;        // sum over M_{<=A}
  Complex dual_upper;       // sum over M_{<=g-A} conj chi(f)/|f|^{1-s}
  Complex dual;             // sum over M_{<=g-A-1}
  Complex total;
};
EvenAfeParts afe_even(const LData& L, double s, int A);

}  // namespace cubic

#endif  // CUBIC_LFUNCTIONS_HPP

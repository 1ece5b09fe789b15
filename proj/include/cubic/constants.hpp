#ifndef CUBIC_CONSTANTS_HPP
#define CUBIC_CONSTANTS_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "cubic/characters.hpp"

namespace cubic {

/// Truncated power series, coefficients c[0..order].
template <class T>
struct PowerSeries {
  std::vector<T> c;

  int order() const { return static_cast<int>(c.size()) - 1; }
  const T& operator[](std::size_t i) const { return c[i]; }
};

template <class T>
PowerSeries<T> series_mul(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  const std::size_t n = std::min(a.c.size(), b.c.size());
  PowerSeries<T> r{std::vector<T>(n, T{})};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

/// a / b for b with constant term 1 (kept exact for integer-like T).
template <class T>
PowerSeries<T> series_div_unit(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  if (b.c.empty() || !(b.c[0] == T{1})) throw Error(Errc::ZeroDenominator, "series divisor needs constant term 1");
  const std::size_t n = std::min(a.c.size(), b.c.size());
  PowerSeries<T> r{std::vector<T>(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(n))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= i; ++j) r.c[i] -= b.c[j] * r.c[i - j];
  }
  return r;
}

/// exp of a real series with zero constant term.
PowerSeries<double> series_exp(const PowerSeries<double>& a);

/// Value of a constant with its truncation degree D and a bound on the
/// neglected tail.
struct ConstantValue {
  double value = 0.0;
  int truncation_degree = 0;
  double tail_bound = 0.0;
};

/// Euler product prod_P factor(|P|) aggregated by degree: degree n enters as
/// exp(pi_q(n) log_factor(n)). The caller supplies a majorant
/// |pi_q(n) log_factor(n)| <= K r^n used for the tail.
struct EulerProductSpec {
  std::function<long double(int)> log_factor;
  double K = 1.0;
  double ratio = 0.5;
};

/// Smallest D with K r^{D+1}/(1-r) < tol, unless `degree` >= 1 forces D.
ConstantValue euler_product(std::uint64_t q, const EulerProductSpec& spec, double tol, int degree = 0);

/// Sum over primes of per-prime terms, aggregated the same way (no exp).
ConstantValue prime_sum(std::uint64_t q, const EulerProductSpec& spec, double tol, int degree = 0);

/// zeta_q(s) = (1 - q^{1-s})^{-1}. Throws PoleAtOne at s = 1.
double zeta_q(std::uint64_t q, double s);
/// Z_q(u) = 1/(1 - qu) to the given order.
PowerSeries<std::int64_t> zeta_q_u(std::uint64_t q, int order);

/// zeta_q(3s) prod_P (1 - 1/(|P|^{3s}(|P|+1))). Throws DomainError for s <= 1/3.
ConstantValue M_q(std::uint64_t q, double s, double tol = 1e-12, int degree = 0);
/// prod_P (1 - 1/(|P|(|P|+1))).
ConstantValue C_q(std::uint64_t q, double tol = 1e-12, int degree = 0);
/// 2/3 - 1/(q-1) + sum_P deg P/(|P|^2+|P|-1) + sum_P deg P (|P|+2)/(|P|^3+2|P|^2-1).
ConstantValue B_q(std::uint64_t q, double tol = 1e-12, int degree = 0);

/// 1 for s < 2/3, g^2 at s = 2/3, g q^{(6/5)(3s-2)g} for s > 2/3.
double E_s_envelope(double s, int g, std::uint64_t q);

/// L(u, chi_f)/L(u^2, conj chi_f) for cube-free f that is not a cube, with
/// L(u, chi_f) summed directly over monics. Throws IsCube.
PowerSeries<Eisenstein> principal_series_P(const FieldCtx& ctx, const Poly& f, int order);

/// prod_{P|f} (1+u^{deg P})^{-1} (1-qu^2)/(1-qu), whose coefficients count
/// square-free monics coprime to f; main_term[d] is prod_{P|f}(1+1/|P|)^{-1} |H(d)|.
struct QSeries {
  PowerSeries<std::int64_t> series;
  std::vector<double> main_term;
};
QSeries coprime_squarefree_series_Q(const FieldCtx& ctx, const Poly& f, int order);

/// K_s(v) = prod_P (1 - v^{3 deg P}/(|P|^{3(1-s)}(|P|+2))) as a series in v.
PowerSeries<double> K_s_series(std::uint64_t q, double s, int order);

/// D(v) = K_s(v)/((1 - q^{3s-2} v^3)(1 - q^{s-1/3} v)) as a series in v.
PowerSeries<double> dual_series_D(std::uint64_t q, double s, int order);

/// sum_{m <= M} [v^{3m}] D(v).
double dual_partial_sum_S(const PowerSeries<double>& D, int M);

/// G_s(v) = Z_q(v/q^{3s}) prod_P (1 - v^{deg P}/(|P|^{3s}(|P|+1))) as a series in v.
PowerSeries<double> principal_series_G(std::uint64_t q, double s, int order);

}  // namespace cubic

#endif  // CUBIC_CONSTANTS_HPP

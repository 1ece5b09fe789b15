#include "cubic/constants.hpp"

#include <cmath>

namespace cubic {

namespace {

int choose_degree(const EulerProductSpec& spec, double tol, int degree) {
  if (spec.ratio <= 0.0 || spec.ratio >= 1.0) throw Error(Errc::DomainError, "tail ratio must lie in (0, 1)");
  if (degree >= 1) return degree;
  int D = 1;
  while (spec.K * std::pow(spec.ratio, D + 1) / (1.0 - spec.ratio) >= tol) {
    if (++D > 400) throw Error(Errc::DomainError, "tolerance not reachable within 400 degrees");
  }
  return D;
}

double tail(const EulerProductSpec& spec, int D) { return spec.K * std::pow(spec.ratio, D + 1) / (1.0 - spec.ratio); }

long double qpow(std::uint64_t q, double e) { return std::pow(static_cast<long double>(q), static_cast<long double>(e)); }

}  // namespace

PowerSeries<double> series_exp(const PowerSeries<double>& a) {
  const std::size_t n = a.c.size();
  PowerSeries<double> b{std::vector<double>(n, 0.0)};
  if (n == 0) return b;
  b.c[0] = std::exp(a.c[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a.c[j] * b.c[k - j];
    b.c[k] = s / static_cast<double>(k);
  }
  return b;
}

ConstantValue prime_sum(std::uint64_t q, const EulerProductSpec& spec, double tol, int degree) {
  const int D = choose_degree(spec, tol, degree);
  long double s = 0;
  for (int n = 1; n <= D; ++n) s += necklace_count_ld(q, n) * spec.log_factor(n);
  return {static_cast<double>(s), D, tail(spec, D)};
}

ConstantValue euler_product(std::uint64_t q, const EulerProductSpec& spec, double tol, int degree) {
  // a log tail of t moves the product by at most value * (e^t - 1)
  ConstantValue v = prime_sum(q, spec, tol / 4.0, degree);
  const double value = std::exp(v.value);
  return {value, v.truncation_degree, value * std::expm1(v.tail_bound)};
}

double zeta_q(std::uint64_t q, double s) {
  if (s == 1.0) throw Error(Errc::PoleAtOne, "zeta_q has a pole at s = 1");
  return 1.0 / (1.0 - std::pow(static_cast<double>(q), 1.0 - s));
}

PowerSeries<std::int64_t> zeta_q_u(std::uint64_t q, int order) {
  PowerSeries<std::int64_t> z{std::vector<std::int64_t>(static_cast<std::size_t>(order + 1))};
  for (int n = 0; n <= order; ++n) z.c[n] = static_cast<std::int64_t>(ipow(q, static_cast<unsigned>(n)));
  return z;
}

ConstantValue M_q(std::uint64_t q, double s, double tol, int degree) {
  if (!(s > 1.0 / 3.0)) throw Error(Errc::DomainError, "M_q(s) needs s > 1/3");
  EulerProductSpec spec;
  spec.log_factor = [q, s](int n) {
    return std::log1p(-1.0L / (qpow(q, 3.0 * s * n) * (qpow(q, n) + 1.0L)));
  };
  spec.K = 2.0;
  spec.ratio = std::pow(static_cast<double>(q), -3.0 * s);
  ConstantValue v = euler_product(q, spec, tol, degree);
  const double z = zeta_q(q, 3.0 * s);
  return {v.value * z, v.truncation_degree, v.tail_bound * z};
}

ConstantValue C_q(std::uint64_t q, double tol, int degree) {
  EulerProductSpec spec;
  spec.log_factor = [q](int n) { return std::log1p(-1.0L / (qpow(q, n) * (qpow(q, n) + 1.0L))); };
  spec.K = 2.0;
  spec.ratio = 1.0 / static_cast<double>(q);
  return euler_product(q, spec, tol, degree);
}

ConstantValue B_q(std::uint64_t q, double tol, int degree) {
  EulerProductSpec first;
  first.log_factor = [q](int n) { return n / (qpow(q, 2 * n) + qpow(q, n) - 1.0L); };
  first.K = 1.0;
  first.ratio = 1.0 / static_cast<double>(q);
  EulerProductSpec second;
  second.log_factor = [q](int n) {
    return n * (qpow(q, n) + 2.0L) / (qpow(q, 3 * n) + 2.0L * qpow(q, 2 * n) - 1.0L);
  };
  second.K = 2.0;
  second.ratio = first.ratio;
  const ConstantValue a = prime_sum(q, first, tol / 2.0, degree);
  const ConstantValue b = prime_sum(q, second, tol / 2.0, degree);
  const double base = 2.0 / 3.0 - 1.0 / (static_cast<double>(q) - 1.0);
  return {base + a.value + b.value, std::max(a.truncation_degree, b.truncation_degree), a.tail_bound + b.tail_bound};
}

double E_s_envelope(double s, int g, std::uint64_t q) {
  constexpr double two_thirds = 2.0 / 3.0;
  if (std::abs(s - two_thirds) < 1e-12) return static_cast<double>(g) * g;
  if (s < two_thirds) return 1.0;
  return g * std::pow(static_cast<double>(q), 1.2 * (3.0 * s - 2.0) * g);
}

PowerSeries<Eisenstein> principal_series_P(const FieldCtx& ctx, const Poly& f, int order) {
  if (!f.is_monic()) throw Error(Errc::NotMonic, "f must be monic");
  if (order < 0 || order > 8) throw Error(Errc::OutOfRange, "order must lie in [0, 8]");
  const CubeFreeDecomp dec = cube_free_decompose(ctx, f);
  if (dec.f1.is_one() && dec.f2.is_one()) throw Error(Errc::IsCube, "f is a perfect cube");
  if (!dec.f3.is_one()) throw Error(Errc::DomainError, "f must be cube-free");

  // chi_f(F) = (F/f)_3 depends on F mod f only
  const int k = f.degree();
  const std::uint64_t nres = ipow(ctx.q(), static_cast<unsigned>(k));
  std::vector<Mu3> table(nres);
  for (std::uint64_t r = 0; r < nres; ++r) {
    Poly::Storage c = monic_from_rank(ctx, k, r).coeffs();
    c.pop_back();
    table[r] = residue_symbol(ctx, Poly(std::move(c)), f);
  }
  const auto residue_rank = [&](Poly F) {
    reduce_monic(ctx, F, f);
    std::uint64_t r = 0;
    for (int i = F.degree(); i >= 0; --i) r = r * ctx.q() + F[static_cast<std::size_t>(i)];
    return r;
  };

  PowerSeries<Eisenstein> L{std::vector<Eisenstein>(static_cast<std::size_t>(order + 1))};
  for (int n = 0; n <= order; ++n) {
    Eisenstein s;
    for (const Poly& F : enumerate_monic(ctx, n)) {
      const Mu3 v = table[residue_rank(F)];
      if (!v.is_zero()) s += Eisenstein::one().times_xi(v.exponent());
    }
    L.c[n] = s;
  }
  PowerSeries<Eisenstein> L2{std::vector<Eisenstein>(static_cast<std::size_t>(order + 1))};
  for (int n = 0; 2 * n <= order; ++n) L2.c[2 * n] = L.c[n].conj();
  return series_div_unit(L, L2);
}

QSeries coprime_squarefree_series_Q(const FieldCtx& ctx, const Poly& f, int order) {
  if (!f.is_monic()) throw Error(Errc::NotMonic, "f must be monic");
  if (order < 0 || order > 10) throw Error(Errc::OutOfRange, "order must lie in [0, 10]");
  const std::int64_t q = ctx.q();
  QSeries out;
  auto& c = out.series.c;
  c.assign(static_cast<std::size_t>(order + 1), 0);
  for (int n = 0; n <= order; ++n) {
    const auto qn = static_cast<std::int64_t>(ipow(q, static_cast<unsigned>(n)));
    c[n] = n == 0 ? 1 : (n == 1 ? q : qn - qn / q);
  }
  double euler = 1.0;
  for (const auto& pp : factor(ctx, f)) {
    const int d = pp.prime.degree();
    euler /= 1.0 + std::pow(static_cast<double>(q), -d);
    // divide by 1 + u^d
    for (int n = d; n <= order; ++n) c[n] -= c[n - d];
  }
  out.main_term.resize(static_cast<std::size_t>(order + 1));
  for (int n = 0; n <= order; ++n) {
    const double h = n == 0 ? 1.0 : (n == 1 ? double(q) : std::pow(double(q), n) - std::pow(double(q), n - 1));
    out.main_term[n] = euler * h;
  }
  return out;
}

PowerSeries<double> K_s_series(std::uint64_t q, double s, int order) {
  PowerSeries<double> lg{std::vector<double>(static_cast<std::size_t>(order + 1), 0.0)};
  for (int n = 1; 3 * n <= order; ++n) {
    const long double pi = necklace_count_ld(q, n);
    const long double cn = 1.0L / (qpow(q, 3.0 * (1.0 - s) * n) * (qpow(q, n) + 2.0L));
    // pi log(1 - c x), x = v^{3n}
    long double ck = cn;
    for (int k = 1; 3 * n * k <= order; ++k, ck *= cn) lg.c[3 * n * k] -= static_cast<double>(pi * ck / k);
  }
  return series_exp(lg);
}

PowerSeries<double> dual_series_D(std::uint64_t q, double s, int order) {
  if (!(s > 0.0 && s < 1.0)) throw Error(Errc::OutOfRange, "s must lie in (0, 1)");
  if (order < 0 || order > 40) throw Error(Errc::OutOfRange, "order must lie in [0, 40]");
  PowerSeries<double> D = K_s_series(q, s, order);
  const double a = std::pow(double(q), 3.0 * s - 2.0);
  const double b = std::pow(double(q), s - 1.0 / 3.0);
  for (int n = 3; n <= order; ++n) D.c[n] += a * D.c[n - 3];  // 1/(1 - a v^3)
  for (int n = 1; n <= order; ++n) D.c[n] += b * D.c[n - 1];  // 1/(1 - b v)
  return D;
}

double dual_partial_sum_S(const PowerSeries<double>& D, int M) {
  if (3 * M > D.order()) throw Error(Errc::OutOfRange, "series order too small for the partial sum");
  double s = 0.0;
  for (int m = 0; m <= M; ++m) s += D.c[3 * m];
  return s;
}

PowerSeries<double> principal_series_G(std::uint64_t q, double s, int order) {
  PowerSeries<double> lg{std::vector<double>(static_cast<std::size_t>(order + 1), 0.0)};
  for (int n = 1; n <= order; ++n) {
    const long double pi = necklace_count_ld(q, n);
    const long double cn = 1.0L / (qpow(q, 3.0 * s * n) * (qpow(q, n) + 1.0L));
    long double ck = cn;
    for (int k = 1; n * k <= order; ++k, ck *= cn) lg.c[n * k] -= static_cast<double>(pi * ck / k);
  }
  PowerSeries<double> G = series_exp(lg);
  const double z = std::pow(double(q), 1.0 - 3.0 * s);
  for (int n = 1; n <= order; ++n) G.c[n] += z * G.c[n - 1];  // Z_q(v/q^{3s}) = 1/(1 - q^{1-3s} v)
  return G;
}

}  // namespace cubic

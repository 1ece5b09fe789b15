#include "cubic/lfunctions.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubic/parallel.hpp"

namespace cubic {

using Rational = boost::multiprecision::cpp_rational;

namespace {

constexpr std::uint64_t kChunk = 4096;

Eisenstein sum_degree(const FieldCtx& ctx, const Character& chi, int n, unsigned threads) {
  const std::uint64_t total = ipow(ctx.q(), static_cast<unsigned>(n));
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  std::vector<Eisenstein> partial(chunks);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    Eisenstein acc;
    for (const Poly& f : enumerate_monic(ctx, n, c * kChunk, kChunk)) {
      const Mu3 v = chiF(ctx, chi, f);
      if (!v.is_zero()) acc += Eisenstein::one().times_xi(v.exponent());
    }
    partial[c] = acc;
  });
  Eisenstein s;
  for (const auto& e : partial) s += e;
  return s;
}

}  // namespace

LData ldata_from_a(const FieldCtx& ctx, const Character& chi, std::vector<Eisenstein> a) {
  LData L{chi, ctx.q(), chi.genus(), chi.delta(), {}, {}, {}};
  const int g = L.genus;
  if (g < 0) throw Error(Errc::DomainError, "character modulus has negative genus");
  a.resize(static_cast<std::size_t>(g + 2 - L.delta));
  L.a = std::move(a);
  L.b.resize(static_cast<std::size_t>(g + 1));
  Eisenstein run;
  for (int n = 0; n <= g; ++n) {
    if (L.delta == 1) {
      L.b[n] = L.a[n];
    } else {
      run += L.a[n];
      L.b[n] = run;
    }
  }
  const Complex bg = eisenstein_to_complex(L.b[g]);
  L.omega = bg / std::pow(static_cast<double>(L.q), g / 2.0);
  return L;
}

LData compute_coeffs(const FieldCtx& ctx, const Character& chi, unsigned threads) {
  const int g = chi.genus();
  if (g < 0) throw Error(Errc::DomainError, "character modulus has negative genus");
  const int top = g + 1 - chi.delta();
  std::vector<Eisenstein> a(static_cast<std::size_t>(top + 1));
  for (int n = 0; n <= top; ++n) a[n] = sum_degree(ctx, chi, n, threads);
  return ldata_from_a(ctx, chi, std::move(a));
}

PrimeTable::PrimeTable(const FieldCtx& ctx, int max_degree) : by_degree_(primes_up_to(ctx, max_degree)) {}

int euler_degree_needed(const Character& chi) { return (chi.genus() + 1) / 2; }

std::vector<Eisenstein> euler_coeffs(const FieldCtx& ctx, const Character& chi, const PrimeTable& primes, int m) {
  if (m > primes.max_degree()) throw Error(Errc::DomainError, "prime table too short for requested degree");
  std::vector<Eisenstein> a(static_cast<std::size_t>(m + 1));
  a[0] = Eisenstein::one();
  for (int d = 1; d <= m; ++d) {
    for (const Poly& P : primes.of_degree(d)) {
      const Mu3 v = chiF(ctx, chi, P);
      if (v.is_zero()) continue;
      // multiply by (1 - xi^k u^d)^{-1}; the ascending sweep produces the geometric series
      for (int n = d; n <= m; ++n) a[n] += a[n - d].times_xi(v.exponent());
    }
  }
  return a;
}

LData compute_coeffs_euler(const FieldCtx& ctx, const Character& chi, const PrimeTable& primes) {
  const int g = chi.genus();
  if (g < 0) throw Error(Errc::DomainError, "character modulus has negative genus");
  const int delta = chi.delta();
  const int top = g + 1 - delta;
  int m = std::min(euler_degree_needed(chi), top);
  std::vector<Eisenstein> a = euler_coeffs(ctx, chi, primes, std::min(m, primes.max_degree()));
  while (static_cast<int>(a.size()) <= m) a.push_back(sum_degree(ctx, chi, static_cast<int>(a.size()), 1));

  const std::int64_t q = ctx.q();
  while (true) {
    if (m >= top) return ldata_from_a(ctx, chi, std::move(a));
    std::vector<Eisenstein> b(static_cast<std::size_t>(g + 1));
    Eisenstein run;
    for (int n = 0; n <= m; ++n) {
      run += a[n];
      b[n] = delta == 1 ? a[n] : run;
    }
    // b_g from any n with n <= m, g-n <= m and b_{g-n} != 0
    int pick = -1;
    for (int n = std::max(0, g - m); n <= std::min(m, g); ++n) {
      if (!b[g - n].is_zero()) {
        pick = n;
        break;
      }
    }
    if (pick >= 0) {
      const Eisenstein& c = b[g - pick];
      const Eisenstein bg = (static_cast<std::int64_t>(ipow(q, static_cast<unsigned>(g - pick))) * (b[pick] * c))
                                .exact_div(c.norm());
      b[g] = bg;
      for (int k = m + 1; k < g; ++k) {
        b[k] = (bg * b[g - k].conj()).exact_div(static_cast<std::int64_t>(ipow(q, static_cast<unsigned>(g - k))));
      }
      std::vector<Eisenstein> full(static_cast<std::size_t>(top + 1));
      for (int n = 0; n <= g; ++n) full[n] = delta == 1 ? b[n] : (n == 0 ? b[0] : b[n] - b[n - 1]);
      if (delta == 0) full[g + 1] = -b[g];
      return ldata_from_a(ctx, chi, std::move(full));
    }
    ++m;
    a.push_back(sum_degree(ctx, chi, m, 1));
  }
}

LData conjugate(const LData& L) {
  LData C = L;
  C.chi = L.chi.conj();
  for (auto& x : C.a) x = x.conj();
  for (auto& x : C.b) x = x.conj();
  C.omega = std::conj(L.omega);
  return C;
}

Complex eval_L(const LData& L, double s) {
  const double u = std::pow(static_cast<double>(L.q), -s);
  Complex acc = 0.0;
  double un = 1.0;
  for (const auto& c : L.a) {
    acc += eisenstein_to_complex(c) * un;
    un *= u;
  }
  return acc;
}

Complex eval_L_horner(const LData& L, double s) {
  const double u = std::pow(static_cast<double>(L.q), -s);
  Complex acc = 0.0;
  for (auto it = L.a.rbegin(); it != L.a.rend(); ++it) acc = acc * u + eisenstein_to_complex(*it);
  return acc;
}

bool check_fe_exact(const LData& L, const LData& Lbar) {
  if (!(Lbar.chi == L.chi.conj()) || Lbar.genus != L.genus || Lbar.b.size() != L.b.size()) {
    throw Error(Errc::ConjugateMissing, "functional equation needs the conjugate character's data");
  }
  const int g = L.genus;
  const auto q = static_cast<std::int64_t>(L.q);
  for (int n = 0; n <= g; ++n) {
    const auto qp = static_cast<std::int64_t>(ipow(static_cast<std::uint64_t>(q), static_cast<unsigned>(g - n)));
    if (!(qp * L.b[n] == L.b[g] * Lbar.b[g - n])) return false;
  }
  return true;
}

namespace {

// Q(xi_3) as pairs x + y xi over the rationals, xi^2 = -1 - xi
struct QXi {
  Rational x, y;
  bool is_zero() const { return x == 0 && y == 0; }
  friend QXi operator+(const QXi& a, const QXi& b) { return {a.x + b.x, a.y + b.y}; }
  friend QXi operator-(const QXi& a, const QXi& b) { return {a.x - b.x, a.y - b.y}; }
  friend QXi operator*(const QXi& a, const QXi& b) {
    return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x - a.y * b.y};
  }
  QXi inv() const {
    const Rational n = x * x - x * y + y * y;
    return {(x - y) / n, -y / n};
  }
};
using QPoly = std::vector<QXi>;  // low to high, no trailing zeros

void trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// remainder of a by b, or the quotient when `quotient` is set
QPoly divide(QPoly a, const QPoly& b, bool quotient) {
  const QXi lead_inv = b.back().inv();
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const QXi c = a.back() * lead_inv;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
    a.pop_back();
    trim(a);
  }
  if (quotient) {
    trim(q);
    return q;
  }
  return a;
}

// P / gcd(P, P'): the same roots, each simple
QPoly squarefree_part(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(QXi{Rational(static_cast<long long>(i)), 0} * p[i]);
  trim(d);
  QPoly a = p, b = d;
  while (!b.empty()) {
    QPoly r = divide(a, b, false);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() <= 1 ? p : divide(p, a, true);
}

}  // namespace

double check_rh_roots(const LData& L) {
  const int g = L.genus;
  if (g == 0) return 0.0;
  if (L.b[g].is_zero()) throw Error(Errc::DegenerateLeadingCoefficient, "b_g vanishes");
  // Repeated roots would only be located to eps^{1/m}; the exact square-free
  // part has the same root set with every root simple.
  QPoly exact;
  for (const auto& e : L.b) exact.push_back({Rational(e.x), Rational(e.y)});
  const QPoly sq = squarefree_part(exact);
  const int k = static_cast<int>(sq.size()) - 1;

  // roots in w = sqrt(q) u, which should lie on the unit circle
  const long double rq = std::sqrt(static_cast<long double>(L.q));
  using CL = std::complex<long double>;
  const CL xi(-0.5L, std::sqrt(3.0L) / 2.0L);
  std::vector<CL> cl(static_cast<std::size_t>(k + 1));
  long double scale = 1.0L;
  for (int n = 0; n <= k; ++n) {
    cl[n] = (sq[n].x.convert_to<long double>() + sq[n].y.convert_to<long double>() * xi) / scale;
    scale *= rq;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(k, k);
  for (int i = 1; i < k; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < k; ++i) comp(i, k - 1) = Complex(-cl[i] / cl[k]);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw Error(Errc::DomainError, "eigenvalue iteration did not converge");
  double worst = 0.0;
  for (int i = 0; i < k; ++i) {
    CL w = es.eigenvalues()(i);
    for (int it = 0; it < 50; ++it) {
      CL p = cl[k], dp = 0;
      for (int n = k - 1; n >= 0; --n) {
        dp = dp * w + p;
        p = p * w + cl[n];
      }
      if (dp == CL(0)) break;
      const CL step = p / dp;
      w -= step;
      if (std::abs(step) < 1e-18L * std::abs(w)) break;
    }
    worst = std::max(worst, static_cast<double>(std::abs(std::abs(w) - 1.0L)));
  }
  return worst;
}

namespace {

// sum_{n <= N} c_n x^n with c_n = a_n (or conj a_n), a_n = 0 beyond the stored range
Complex partial_sum(const LData& L, int N, double x, bool conj) {
  Complex acc = 0.0;
  double xn = 1.0;
  for (int n = 0; n <= N && n < static_cast<int>(L.a.size()); ++n) {
    const Eisenstein& e = L.a[n];
    acc += eisenstein_to_complex(conj ? e.conj() : e) * xn;
    xn *= x;
  }
  return acc;
}

}  // namespace

AfeParts afe_odd(const LData& L, double s, int A) {
  if (L.delta != 1) throw Error(Errc::WrongParity, "odd approximate functional equation needs delta = 1");
  if (A < 0 || A > L.genus) throw Error(Errc::OutOfRange, "A must lie in [0, g]");
  const double q = L.q;
  const int g = L.genus;
  AfeParts r;
  r.principal = partial_sum(L, A, std::pow(q, -s), false);
  r.dual = L.omega * std::pow(q, (0.5 - s) * g) * partial_sum(L, g - A - 1, std::pow(q, s - 1.0), true);
  return r;
}

EvenAfeParts afe_even(const LData& L, double s, int A) {
  if (L.delta != 0) throw Error(Errc::WrongParity, "even approximate functional equation needs delta = 0");
  if (s == 0.0 || s == 1.0) throw Error(Errc::PrefactorPole, "prefactor pole at s = 0 or s = 1");
  if (A < 0 || A > L.genus) throw Error(Errc::OutOfRange, "A must lie in [0, g]");
  const double q = L.q;
  const int g = L.genus;
  const auto zeta = [q](double x) { return 1.0 / (1.0 - std::pow(q, 1.0 - x)); };
  const double xp = std::pow(q, -s);
  const double xd = std::pow(q, s - 1.0);
  EvenAfeParts r;
  r.principal_upper = partial_sum(L, A + 1, xp, false);
  r.principal = partial_sum(L, A, xp, false);
  r.dual_upper = partial_sum(L, g - A, xd, true);
  r.dual = partial_sum(L, g - A - 1, xd, true);
  const Complex left = (r.principal_upper - std::pow(q, 1.0 - s) * r.principal) / (1.0 - std::pow(q, 1.0 - s));
  const Complex right = L.omega * std::pow(q, (0.5 - s) * g) * (zeta(2.0 - s) / zeta(s + 1.0)) *
                        (r.dual_upper - std::pow(q, s) * r.dual) / (1.0 - std::pow(q, s));
  r.total = left + right;
  return r;
}

}  // namespace cubic

#include "cubic/gauss.hpp"

#include <cmath>
#include <unordered_map>

#include "cubic/numeric.hpp"
#include "cubic/parallel.hpp"

namespace cubic {

namespace {

Complex xi_pow(int k) {
  static const Complex table[3] = {{1.0, 0.0}, {-0.5, std::sqrt(3.0) / 2.0}, {-0.5, -std::sqrt(3.0) / 2.0}};
  return table[((k % 3) + 3) % 3];
}

Complex mu3_value(Mu3 v) { return v.is_zero() ? Complex{} : xi_pow(v.exponent()); }

bool close(const Complex& a, const Complex& b, double scale) { return std::abs(a - b) <= 1e-6 * scale; }

void require_coprime(const FieldCtx& ctx, const Poly& a, const Poly& b, const char* what) {
  if (!gcd(ctx, a, b).is_one()) throw Error(Errc::NotCoprime, what);
}

}  // namespace

Complex tau_chi3(const FieldCtx& ctx, int j) {
  CompensatedSum s;
  for (Elem a = 1; a < ctx.q(); ++a) {
    s += mu3_value(chi3(ctx, a).pow(j)) * ctx.additive_root(trace_to_prime(ctx, a));
  }
  return s.value();
}

Complex epsilon(const FieldCtx& ctx, int j) {
  if (((j % 3) + 3) % 3 == 0) return {1.0, 0.0};
  return tau_chi3(ctx, j) / std::sqrt(static_cast<double>(ctx.q()));
}

GaussValue gauss_sum(const FieldCtx& ctx, const Poly& V, const Poly& F, int power) {
  if (!F.is_monic()) throw Error(Errc::NotMonic, "Gauss sum modulus must be monic");
  const int n = F.degree();
  if (n > kMaxGaussDegree) throw Error(Errc::DegreeTooLarge, "Gauss sum modulus degree exceeds 8");
  if (n == 0) return {Complex{1.0, 0.0}, 0};
  // a -> top coefficient of aV mod F is F_q-linear: w_i = top coefficient of T^i V mod F
  std::vector<Elem> w(static_cast<std::size_t>(n));
  Poly tv = mod(ctx, V, F);
  for (int i = 0; i < n; ++i) {
    w[i] = tv[static_cast<std::size_t>(n - 1)];
    tv = mul_mod(ctx, tv, Poly::t(), F);
  }
  CompensatedSum s;
  for (const Poly& m : enumerate_monic(ctx, n)) {
    Poly::Storage c = m.coeffs();
    c.pop_back();
    const Poly a(std::move(c));
    const Mu3 v = residue_symbol(ctx, a, F).pow(power);
    if (v.is_zero()) continue;
    Elem top = 0;
    for (int i = 0; i <= a.degree(); ++i) top = ctx.add(top, ctx.mul(a[i], w[i]));
    s += mu3_value(v) * ctx.additive_root(trace_to_prime(ctx, top));
  }
  return {s.value(), n};
}

Complex prime_gauss_sum(const FieldCtx& ctx, const Poly& P) {
  const int d = P.degree();
  if (d < 1) throw Error(Errc::NotIrreducible, "prime Gauss sum needs a prime");
  Eisenstein S;
  for (const Poly& m : enumerate_monic(ctx, d - 1)) {
    const Mu3 v = residue_symbol(ctx, m, P);
    if (!v.is_zero()) S += Eisenstein::one().times_xi(v.exponent());
  }
  const Complex factor = d % 3 == 0 ? Complex(-static_cast<double>(ctx.q()), 0.0) : tau_chi3(ctx, d);
  return eisenstein_to_complex(S) * factor;
}

bool check_twist(const FieldCtx& ctx, const Poly& f, const Poly& V, const Poly& F, bool conjugate) {
  require_coprime(ctx, f, F, "twist needs gcd(f, F) = 1");
  const Mu3 c = residue_symbol(ctx, f, F);
  const Complex lhs = mu3_value(conjugate ? c.conj() : c) * gauss_sum(ctx, V, F).value;
  const Complex rhs = gauss_sum(ctx, mul(ctx, f, V), F).value;
  return close(lhs, rhs, std::pow(double(ctx.q()), F.degree() / 2.0));
}

bool check_mult(const FieldCtx& ctx, const Poly& V, const Poly& F1, const Poly& F2) {
  require_coprime(ctx, F1, F2, "multiplicativity needs gcd(F1, F2) = 1");
  const Poly F = mul(ctx, F1, F2);
  const Complex lhs = gauss_sum(ctx, V, F).value;
  const Complex rhs =
      mu3_value(residue_symbol(ctx, F2, F1).pow(2)) * gauss_sum(ctx, V, F1).value * gauss_sum(ctx, V, F2).value;
  return close(lhs, rhs, std::pow(double(ctx.q()), F.degree() / 2.0));
}

Complex omega_from_gauss(const FieldCtx& ctx, const Character& chi) {
  const int h = chi.conductor_degree();
  if (h > kMaxGaussDegree) throw Error(Errc::DegreeTooLarge, "conductor degree exceeds 8");
  const Complex G = gauss_sum(ctx, Poly::one(), chi.modulus(), chi.power()).value;
  return std::conj(epsilon(ctx, chi.power() * h)) * G / std::pow(double(ctx.q()), h / 2.0);
}

Complex rho(const FieldCtx& ctx, int d, const Poly& f) {
  switch ((d + f.degree()) % 3) {
    case 0: return {1.0, 0.0};
    case 1: return tau_chi3(ctx, 1) / std::cbrt(static_cast<double>(ctx.q()));
    default: return {};
  }
}

DualMainTerm dual_main_term_compare(const FieldCtx& ctx, const Poly& f, int d, unsigned threads) {
  if (d > 5) throw Error(Errc::DegreeTooLarge, "dual main term comparison supports d <= 5");
  if (f.degree() > 2) throw Error(Errc::DegreeTooLarge, "dual main term comparison supports deg f <= 2");
  if (d < 0) throw Error(Errc::DomainError, "degree must be >= 0");
  if (!f.is_monic()) throw Error(Errc::NotMonic, "f must be monic");
  const double q = ctx.q();

  // G(1, P) for every prime P of degree <= d with P not dividing f
  const auto primes = primes_up_to(ctx, d);
  std::vector<std::unordered_map<std::uint64_t, Complex>> memo(static_cast<std::size_t>(d + 1));
  for (int k = 1; k <= d; ++k) {
    std::vector<Complex> vals(primes[k].size());
    parallel_chunks(vals.size(), threads, [&](std::size_t i) {
      if (!divides(ctx, primes[k][i], f)) vals[i] = prime_gauss_sum(ctx, primes[k][i]);
    });
    for (std::size_t i = 0; i < vals.size(); ++i) memo[k].emplace(monic_rank(ctx, primes[k][i]), vals[i]);
  }

  constexpr std::uint64_t chunk = 2048;
  const std::uint64_t total = ipow(ctx.q(), static_cast<unsigned>(d));
  const std::size_t chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
  std::vector<CompensatedSum> partial(chunks);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    for (const Poly& F : enumerate_monic(ctx, d, c * chunk, chunk)) {
      if (!gcd(ctx, F, f).is_one()) continue;
      const Factorization fac = factor(ctx, F);
      bool squarefree = true;
      for (const auto& pp : fac) squarefree = squarefree && pp.exponent == 1;
      if (!squarefree) continue;
      // G(f, P_1...P_k) = prod_i G(f P_{i+1}...P_k, P_i) and G(W, P) = conj(chi_P(W)) G(1, P)
      Complex g{1.0, 0.0};
      for (std::size_t i = 0; i < fac.size(); ++i) {
        const Poly& P = fac[i].prime;
        Mu3 w = residue_symbol(ctx, f, P);
        for (std::size_t j = i + 1; j < fac.size(); ++j) w = w * residue_symbol(ctx, fac[j].prime, P);
        g *= mu3_value(w.conj()) * memo[P.degree()].at(monic_rank(ctx, P));
      }
      partial[c] += g;
    }
  });
  CompensatedSum exact;
  for (const auto& p : partial) exact += p.value();

  DualMainTerm r;
  r.d = d;
  r.f = f;
  r.exact = exact.value();
  const CubeFreeDecomp dec = cube_free_decompose(ctx, f);
  if (dec.f2.is_one()) {
    double euler = 1.0;
    for (const auto& pp : factor(ctx, f)) euler /= 1.0 + std::pow(q, -pp.prime.degree());
    const double zeta2 = 1.0 / (1.0 - 1.0 / q);
    const Complex g1 = gauss_sum(ctx, Poly::one(), dec.f1).value;
    r.main = rho(ctx, d, f) * std::conj(g1) / std::pow(q, 2.0 * dec.f1.degree() / 3.0) * std::pow(q, 4.0 * d / 3.0) /
             zeta2 * euler;
  }
  r.residual = std::abs(r.exact - r.main) / std::pow(q, 4.0 * d / 3.0);
  return r;
}

}  // namespace cubic

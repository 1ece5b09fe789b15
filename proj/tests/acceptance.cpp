// Acceptance runner. Prints one PASS/FAIL line per criterion; with arguments
// only the listed criteria run. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cubic/constants.hpp"
#include "cubic/gauss.hpp"
#include "cubic/io.hpp"
#include "cubic/moments.hpp"
#include "cubic/parallel.hpp"
#include "cubic/rmt.hpp"
#include "oracles.hpp"

using namespace cubic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const FieldCtx& F7() {
  static const FieldCtx ctx = make_field(7);
  return ctx;
}

std::vector<Poly> seeded_squarefree(const FieldCtx& ctx, int d, int count, std::uint64_t seed) {
  std::vector<Poly> out;
  for (std::uint64_t i = 0; static_cast<int>(out.size()) < count; ++i) {
    auto rng = stream_rng(seed, i);
    Poly F = monic_from_rank(ctx, d, rng() % ipow(ctx.q(), static_cast<unsigned>(d)));
    if (is_squarefree(ctx, F)) out.push_back(std::move(F));
  }
  return out;
}

std::vector<Poly> monics_up_to(const FieldCtx& ctx, int d) {
  std::vector<Poly> out;
  for (int k = 0; k <= d; ++k) {
    for (const Poly& f : enumerate_monic(ctx, k)) out.push_back(f);
  }
  return out;
}

Outcome c1_functional_equation() {
  const FieldCtx& ctx = F7();
  Timer t;
  const PrimeTable primes(ctx, 2);
  std::uint64_t n = 0, ok = 0;
  family_H3g(ctx, 1, [&](const Character& chi) {
    const LData L = compute_coeffs_euler(ctx, chi, primes);
    const LData Lb = compute_coeffs_euler(ctx, chi.conj(), primes);
    ok += check_fe_exact(L, Lb);
    ++n;
  });
  const double secs = t.seconds();
  return {ok == n && n == 2058 && secs < 60.0, fmt("%llu/%llu characters satisfy the cleared identity, %.2f s",
                                                   (unsigned long long)ok, (unsigned long long)n, secs)};
}

Outcome c2_unit_root_number() {
  const FieldCtx& ctx = F7();
  const PrimeTable primes(ctx, 2);
  std::uint64_t n = 0, ok = 0;
  const Eisenstein q3(343, 0);
  family_H3g(ctx, 1, [&](const Character& chi) {
    const LData L = compute_coeffs_euler(ctx, chi, primes);
    ok += (L.b[3] * L.b[3].conj() == q3);
    ++n;
  });
  return {ok == n && n == 2058, fmt("b_g conj(b_g) = q^g on %llu/%llu characters", (unsigned long long)ok,
                                    (unsigned long long)n)};
}

Outcome c3_afe() {
  const FieldCtx& ctx = F7();
  const PrimeTable primes(ctx, 4);
  double worst = 0.0;
  int chars = 0;
  for (int d : {4, 7}) {
    for (const Poly& F : seeded_squarefree(ctx, d, 200, 300 + d)) {
      const LData L = compute_coeffs_euler(ctx, Character(ctx, F), primes);
      for (double s : {0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.8}) {
        const Complex want = eval_L(L, s);
        for (int A = 0; A <= L.genus; ++A) {
          worst = std::max(worst, std::abs(afe_odd(L, s, A).total() - want) / std::max(1.0, std::abs(want)));
        }
      }
      ++chars;
    }
  }
  return {worst < 1e-9, fmt("%d characters (deg 4 and 7), max relative error %.3e", chars, worst)};
}

Outcome c4_root_number_gauss() {
  const FieldCtx& ctx = F7();
  const PrimeTable primes(ctx, 2);
  double worst = 0.0;
  for (const Poly& F : seeded_squarefree(ctx, 4, 200, 4)) {
    const Character chi(ctx, F);
    worst = std::max(worst, std::abs(omega_from_gauss(ctx, chi) - compute_coeffs_euler(ctx, chi, primes).omega));
  }
  return {worst < 1e-6, fmt("200 conductors of degree 4, max |omega_gauss - omega_coeff| = %.3e", worst)};
}

Outcome c5_rh() {
  const FieldCtx& ctx = F7();
  const PrimeTable primes(ctx, 4);
  double worst = 0.0;
  for (int d : {4, 7}) {
    for (const Poly& F : seeded_squarefree(ctx, d, 100, 500 + d)) {
      worst = std::max(worst, check_rh_roots(compute_coeffs_euler(ctx, Character(ctx, F), primes)));
    }
  }
  return {worst < 1e-8, fmt("100 characters each at deg 4 and 7, max root deviation %.3e", worst)};
}

Outcome c6_generating_series() {
  const FieldCtx& ctx = F7();
  constexpr int kOrder = 6;
  std::vector<Poly> sqf{Poly::one()};
  for (int n = 1; n <= kOrder; ++n) {
    for (const Poly& F : enumerate_squarefree(ctx, n)) sqf.push_back(F);
  }
  int p_checked = 0, p_ok = 0, q_checked = 0, q_ok = 0;
  for (const Poly& f : monics_up_to(ctx, 3)) {
    const Factorization fac = factor(ctx, f);
    bool cube_free = true, cube = true;
    for (const auto& pp : fac) {
      cube_free = cube_free && pp.exponent < 3;
      cube = cube && pp.exponent % 3 == 0;
    }
    // brute force over residues mod f through the factorization
    const int k = f.degree();
    const std::vector<Poly> res = oracle::residues(ctx, k);
    std::map<std::uint64_t, std::pair<Mu3, bool>> table;
    auto key = [&](const Poly& r) {
      std::uint64_t v = 0;
      for (int i = k - 1; i >= 0; --i) v = v * ctx.q() + r[static_cast<std::size_t>(i)];
      return v;
    };
    for (const Poly& r : res) table[key(r)] = {oracle::chi(ctx, fac, 1, r), gcd(ctx, r, f).is_one()};
    std::vector<Eisenstein> chi_sum(kOrder + 1);
    std::vector<std::int64_t> count(kOrder + 1, 0);
    for (const Poly& F : sqf) {
      const auto& [v, coprime] = table.at(key(k == 0 ? Poly() : mod(ctx, F, f)));
      chi_sum[F.degree()] += oracle::unit(v);
      count[F.degree()] += coprime;
    }
    const QSeries Q = coprime_squarefree_series_Q(ctx, f, kOrder);
    ++q_checked;
    q_ok += std::vector<std::int64_t>(Q.series.c) == count;
    if (cube_free && !cube) {
      const auto P = principal_series_P(ctx, f, kOrder);
      ++p_checked;
      p_ok += P.c == chi_sum;
    }
  }
  return {p_ok == p_checked && q_ok == q_checked,
          fmt("P(u;f): %d/%d non-cube cube-free f exact; Q(u;f): %d/%d f exact (deg f <= 3, order 6)", p_ok,
              p_checked, q_ok, q_checked)};
}

Outcome c7_gauss_lemmas() {
  const FieldCtx& ctx = F7();
  int tw = 0, tw_ok = 0, mu = 0, mu_ok = 0, va = 0, va_ok = 0;
  const std::vector<Poly> Vs{Poly::one(), Poly::t(), parse_poly(ctx, "T+3")};
  const auto upto3 = monics_up_to(ctx, 3);
  for (const Poly& F : upto3) {
    for (const Poly& f : monics_up_to(ctx, 1)) {
      if (!gcd(ctx, f, F).is_one()) continue;
      for (const Poly& V : Vs) {
        ++tw;
        tw_ok += check_twist(ctx, f, V, F);
      }
    }
  }
  for (const Poly& F1 : upto3) {
    for (const Poly& F2 : upto3) {
      if (F1.degree() + F2.degree() > 3 || !gcd(ctx, F1, F2).is_one()) continue;
      for (const Poly& V : Vs) {
        ++mu;
        mu_ok += check_mult(ctx, V, F1, F2);
      }
    }
  }
  for (const Poly& F : monics_up_to(ctx, 4)) {
    const Factorization fac = factor(ctx, F);
    for (const Poly& V : Vs) {
      bool vanish = false;
      for (const auto& pp : fac) vanish = vanish || (pp.exponent >= 2 && !divides(ctx, pp.prime, V));
      if (!vanish) continue;
      ++va;
      va_ok += std::abs(gauss_sum(ctx, V, F).value) <= 1e-6 * std::pow(7.0, F.degree() / 2.0);
    }
  }
  return {tw == tw_ok && mu == mu_ok && va == va_ok,
          fmt("twist %d/%d, multiplicativity %d/%d, vanishing %d/%d", tw_ok, tw, mu_ok, mu, va_ok, va)};
}

Outcome c8_dual_main_term() {
  const FieldCtx& ctx = F7();
  Timer t;
  double r[3];
  std::string vals;
  for (int d = 3; d <= 5; ++d) {
    const DualMainTerm m = dual_main_term_compare(ctx, Poly::one(), d, default_threads());
    r[d - 3] = m.residual;
    vals += fmt(" d=%d:%.3e", d, m.residual);
  }
  const bool decreasing = r[0] > r[1] && r[1] > r[2];
  const double secs = t.seconds();
  std::string note;
  if (!decreasing && std::max({r[0], r[1], r[2]}) < 1e-12) note = " (all residuals are rounding level: exact = main for f = 1)";
  return {decreasing && secs < 600.0, fmt("f=1 residuals%s, %.1f s%s", vals.c_str(), secs, note.c_str())};
}

Outcome c9_moment_transition() {
  const FieldCtx& ctx = F7();
  const unsigned threads = default_threads();
  Timer t;
  bool pass = true;
  std::string detail;

  const MomentReport a = moment(ctx, 1, 0.5, MomentOptions{});
  const double dev_a = std::abs(a.mean.real() - a.prediction);
  pass = pass && dev_a < 0.5;
  detail += fmt("(a) g=1 s=1/2 n=%llu mean=%.6f M_7(1/2)=%.6f |diff|=%.4f", (unsigned long long)a.sample_size,
                a.mean.real(), a.prediction, dev_a);

  const double C7 = C_q(7).value;
  double means[3], sigmas[3];
  for (int g = 2; g <= 4; ++g) {
    MomentOptions o;
    o.mode = Mode::Sample;
    o.sample_size = 20000;
    o.seed = 2026 + static_cast<std::uint64_t>(g);
    o.threads = threads;
    const MomentReport r = moment(ctx, g, 1.0 / 3.0, o);
    means[g - 2] = r.mean.real();
    sigmas[g - 2] = r.std_error;
    const double dev = std::abs(r.mean.real() - r.prediction);
    const bool ok = dev <= 2.0 + 3.0 * r.std_error;
    pass = pass && ok;
    detail += fmt("; (b) g=%d seed=%llu n=%llu mean=%.4f se=%.4f C_7(g+B_7)=%.4f |diff|=%.4f%s", g,
                  (unsigned long long)o.seed, (unsigned long long)r.sample_size, r.mean.real(), r.std_error,
                  r.prediction, dev, ok ? "" : " OUT");
  }
  for (int i = 0; i < 2; ++i) {
    const double diff = means[i + 1] - means[i];
    const double s = 3.0 * std::hypot(sigmas[i], sigmas[i + 1]);
    const bool ok = diff > 0.0 && diff >= 0.5 * C7 - s && diff <= 1.5 * C7 + s;
    pass = pass && ok;
    detail += fmt("; step g=%d->%d %.4f (band [%.4f, %.4f] +- %.4f)%s", i + 2, i + 3, diff, 0.5 * C7, 1.5 * C7, s,
                  ok ? "" : " OUT");
  }
  detail += fmt("; %.0f s on %u workers", t.seconds(), threads);
  return {pass, detail};
}

Outcome c10_constants() {
  bool pass = true;
  std::string detail;
  for (std::uint64_t q : {7u, 13u}) {
    const ConstantValue c = C_q(q), b = B_q(q);
    const double dc = std::abs(C_q(q, 1e-12, c.truncation_degree + 5).value - c.value);
    const double db = std::abs(B_q(q, 1e-12, b.truncation_degree + 5).value - b.value);
    pass = pass && dc < 1e-12 && db < 1e-12;
    detail += fmt("q=%llu C=%.12f (D=%d, dD+5 %.1e) B=%.12f (D=%d, dD+5 %.1e); ", (unsigned long long)q, c.value,
                  c.truncation_degree, dc, b.value, b.truncation_degree, db);
  }
  double c_prev = 0.0, b_gap_prev = 1e9;
  std::string trend;
  for (std::uint64_t q : {7u, 13u, 31u, 61u}) {
    const double c = C_q(q).value, gap = std::abs(B_q(q).value - 2.0 / 3.0);
    pass = pass && c > c_prev && c < 1.0 && gap < b_gap_prev;
    trend += fmt(" q=%llu:(%.6f, %.6f)", (unsigned long long)q, c, B_q(q).value);
    c_prev = c;
    b_gap_prev = gap;
  }
  return {pass, detail + "trend (C_q, B_q):" + trend};
}

Outcome c11_rmt_exact() {
  Timer t;
  int ok = 0;
  for (int N = 0; N <= 30; ++N) ok += weighted_integral_exact(N).agree();
  int zok = 0;
  for (int r = 0; r <= 12; ++r) {
    Rational s = 0;
    for (const Partition& l : partitions_of(r)) s += Rational(1, z_of(l));
    zok += (s == 1);
  }
  const double secs = t.seconds();
  return {ok == 31 && zok == 13 && secs < 60.0,
          fmt("tuple sum = floor(N/3)+1 for %d/31 N <= 30; sum 1/z = 1 for %d/13 r <= 12; %.2f s", ok, zok, secs)};
}

Outcome c12_rmt_mc() {
  const unsigned threads = default_threads();
  bool pass = true;
  std::string detail;
  for (int N : {1, 3, 6}) {
    const std::uint64_t seed = 700 + static_cast<std::uint64_t>(N);
    const McEstimate e = weighted_integral_mc(N, 200000, seed, threads);
    const bool ok = e.z_score() <= 3.0;
    pass = pass && ok;
    detail += fmt("N=%d seed=%llu est=%.4f%+.4fi target=%g sigma=%.4f z=%.2f%s; ", N, (unsigned long long)seed,
                  e.estimate.real(), e.estimate.imag(), e.target, e.sigma, e.z_score(), ok ? "" : " OUT");
  }
  const std::vector<std::pair<Partition, Partition>> cases{{Partition({1}), Partition({1})},
                                                          {Partition({1, 1}), Partition({2})},
                                                          {Partition({2, 1, 1}), Partition({2, 1, 1})}};
  std::uint64_t seed = 800;
  for (const auto& [l, m] : cases) {
    const McEstimate e = diaconis_evans_check(8, l, m, 200000, ++seed, threads);
    const bool ok = e.z_score() <= 3.0;
    pass = pass && ok;
    detail += fmt("DE N=8 [%s|%s] seed=%llu est=%.4f%+.4fi target=%g z=%.2f%s; ", l.str().c_str(), m.str().c_str(),
                  (unsigned long long)seed, e.estimate.real(), e.estimate.imag(), e.target, e.z_score(),
                  ok ? "" : " OUT");
  }
  return {pass, detail};
}

Outcome c13_determinism() {
  const FieldCtx& ctx = F7();
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) failed.emplace_back(what);
  };

  MomentOptions ex1, ex4;
  ex4.threads = 4;
  const auto e1 = scan_s(ctx, 1, {0.25, 1.0 / 3.0, 0.5}, ex1);
  const auto e4 = scan_s(ctx, 1, {0.25, 1.0 / 3.0, 0.5}, ex4);
  bool same = true;
  for (std::size_t i = 0; i < e1.size(); ++i) {
    same = same && e1[i].mean == e4[i].mean && e1[i].coeff_sums == e4[i].coeff_sums &&
           e1[i].sample_digest == e4[i].sample_digest;
  }
  expect(same, "exhaustive scan");

  const Character chi(ctx, parse_poly(ctx, "T^7+T+1"));
  expect(compute_coeffs(ctx, chi, 1).a == compute_coeffs(ctx, chi, 4).a, "coefficients");

  const DualMainTerm d1 = dual_main_term_compare(ctx, Poly::t(), 4, 1);
  const DualMainTerm d4 = dual_main_term_compare(ctx, Poly::t(), 4, 4);
  expect(d1.exact == d4.exact && d1.residual == d4.residual, "dual main term");

  MomentOptions s1;
  s1.mode = Mode::Sample;
  s1.sample_size = 2000;
  s1.seed = 99;
  MomentOptions s4 = s1;
  s4.threads = 4;
  const MomentReport m1 = moment(ctx, 2, 1.0 / 3.0, s1);
  const MomentReport m4 = moment(ctx, 2, 1.0 / 3.0, s4);
  const MomentReport again = moment(ctx, 2, 1.0 / 3.0, s1);
  expect(m1.sample_digest == m4.sample_digest && m1.coeff_sums == m4.coeff_sums && m1.mean == m4.mean,
         "sampled moment across workers");
  expect(again.sample_digest == m1.sample_digest && again.mean == m1.mean, "sampled moment rerun");

  const SplitReport p1 = principal_dual_split(ctx, 1, 0.5, 1, ex1);
  const SplitReport p4 = principal_dual_split(ctx, 1, 0.5, 1, ex4);
  expect(p1.principal == p4.principal && p1.dual == p4.dual, "principal/dual split");

  const McEstimate w1 = weighted_integral_mc(6, 5000, 3, 1);
  const McEstimate w4 = weighted_integral_mc(6, 5000, 3, 4);
  expect(w1.estimate == w4.estimate && w1.sigma == w4.sigma, "Monte-Carlo");

  std::string detail = "exhaustive scan, coefficients, dual main term, sampled moment (digest " +
                       fmt("%016llx", (unsigned long long)m1.sample_digest) +
                       "), split and Monte-Carlo compared at 1 vs 4 workers";
  for (const auto& f : failed) detail += "; MISMATCH " + f;
  return {failed.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
      {1, {"exact functional equation on h(3), q=7", c1_functional_equation}},
      {2, {"|omega| = 1 as an integer identity", c2_unit_root_number}},
      {3, {"odd approximate functional equation", c3_afe}},
      {4, {"root number vs Gauss sum", c4_root_number_gauss}},
      {5, {"RH root check", c5_rh}},
      {6, {"generating-series oracles", c6_generating_series}},
      {7, {"Gauss-sum lemma suite", c7_gauss_lemmas}},
      {8, {"dual main term residual decay", c8_dual_main_term}},
      {9, {"moment transition", c9_moment_transition}},
      {10, {"constants", c10_constants}},
      {11, {"RMT exact", c11_rmt_exact}},
      {12, {"RMT Monte-Carlo", c12_rmt_mc}},
      {13, {"determinism", c13_determinism}},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& [id, entry] : criteria) {
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = entry.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %2d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, entry.first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}

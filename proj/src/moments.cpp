#include "cubic/moments.hpp"

#include <chrono>
#include <cmath>

#include "cubic/constants.hpp"
#include "cubic/numeric.hpp"
#include "cubic/parallel.hpp"

namespace cubic {

namespace {

constexpr std::size_t kCharChunk = 64;
constexpr double kExhaustiveLimit = 1e10;

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  // rejection keeps the draw exactly uniform and independent of the library's distributions
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void check_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw Error(Errc::OutOfRange, "s must lie in (0, 1)");
}

double M_q_any(std::uint32_t q, double s) {
  if (s > 1.0 / 3.0) return M_q(q, s).value;
  EulerProductSpec spec;
  spec.log_factor = [q, s](int n) {
    return std::log1p(-1.0L / (std::pow(static_cast<long double>(q), 3.0L * s * n) *
                               (std::pow(static_cast<long double>(q), static_cast<long double>(n)) + 1.0L)));
  };
  spec.K = 2.0;
  spec.ratio = std::pow(static_cast<double>(q), -3.0 * s);
  return zeta_q(q, 3.0 * s) * euler_product(q, spec, 1e-12).value;
}

}  // namespace

const char* mode_name(Mode m) { return m == Mode::Exhaustive ? "exhaustive" : "sample"; }

double exhaustive_cost(const FieldCtx& ctx, int g) {
  const int genus = 3 * g;
  const int m = (genus + 1) / 2;
  double primes = 0.0;
  for (int n = 1; n <= m; ++n) primes += static_cast<double>(necklace_count_ld(ctx.q(), n));
  const double family = std::pow(double(ctx.q()), 3 * g + 1) - std::pow(double(ctx.q()), 3 * g);
  return family * std::max(1.0, primes);
}

std::vector<Poly> family_subset(const FieldCtx& ctx, int g, const MomentOptions& opt) {
  if (g < 0) throw Error(Errc::DomainError, "g must be >= 0");
  const int d = 3 * g + 1;
  if (opt.mode == Mode::Exhaustive) {
    if (!opt.allow_large && exhaustive_cost(ctx, g) > kExhaustiveLimit) {
      throw Error(Errc::SampleTooLarge, "exhaustive run exceeds the cost cutoff; use sample mode or override");
    }
    return enumerate_squarefree(ctx, d);
  }
  if (opt.sample_size < 1) throw Error(Errc::DomainError, "sample mode needs sample_size >= 1");
  if (opt.sample_size > family_size(ctx, g)) throw Error(Errc::SampleTooLarge, "sample larger than the family");
  const std::uint64_t range = ipow(ctx.q(), static_cast<unsigned>(d));
  std::vector<Poly> out(opt.sample_size);
  const std::size_t chunks = (out.size() + 1023) / 1024;
  parallel_chunks(chunks, opt.threads, [&](std::size_t c) {
    const std::size_t end = std::min(out.size(), (c + 1) * 1024);
    for (std::size_t i = c * 1024; i < end; ++i) {
      auto rng = stream_rng(opt.seed, i);
      while (true) {
        Poly F = monic_from_rank(ctx, d, uniform_below(rng, range));
        if (is_squarefree(ctx, F)) {
          out[i] = std::move(F);
          break;
        }
      }
    }
  });
  return out;
}

double moment_prediction(std::uint32_t q, int g, double s, bool at_transition) {
  if (at_transition) return C_q(q).value * (g + B_q(q).value);
  return M_q_any(q, s);
}

double moment_envelope(std::uint32_t q, int g, double s, bool at_transition) {
  if (at_transition) return 1.0;
  const double Q = q;
  return std::pow(Q, 0.3 * (1.0 - 6.0 * s) * g) + std::pow(Q, -(1.0 + 9.0 * s) * g / 5.0 + 2.0 - 2.0 * s) +
         std::pow(Q, (1.0 - 3.0 * s) * g) * E_s_envelope(s, g, q);
}

std::vector<MomentReport> scan_s(const FieldCtx& ctx, int g, const std::vector<double>& s_grid,
                                 const MomentOptions& opt) {
  for (double s : s_grid) check_s(s);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Poly> moduli = family_subset(ctx, g, opt);
  const std::size_t n = moduli.size();
  const std::size_t k = s_grid.size();
  const int genus = 3 * g;
  const PrimeTable primes(ctx, (genus + 1) / 2);

  std::vector<Complex> values(n * k);
  const std::size_t chunks = (n + kCharChunk - 1) / kCharChunk;
  std::vector<std::vector<Eisenstein>> partial(chunks, std::vector<Eisenstein>(static_cast<std::size_t>(genus + 1)));
  parallel_chunks(chunks, opt.threads, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kCharChunk);
    for (std::size_t i = c * kCharChunk; i < end; ++i) {
      const LData L = compute_coeffs_euler(ctx, Character(ctx, moduli[i]), primes);
      for (std::size_t j = 0; j < L.a.size(); ++j) partial[c][j] += L.a[j];
      for (std::size_t j = 0; j < k; ++j) values[i * k + j] = eval_L(L, s_grid[j]);
    }
  });
  std::vector<Eisenstein> coeff_sums(static_cast<std::size_t>(genus + 1));
  for (const auto& p : partial) {
    for (std::size_t j = 0; j < coeff_sums.size(); ++j) coeff_sums[j] += p[j];
  }
  std::uint64_t digest = 0xcbf29ce484222325ULL;
  for (const Poly& F : moduli) digest = fnv1a(digest, monic_rank(ctx, F));
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::vector<MomentReport> out;
  for (std::size_t j = 0; j < k; ++j) {
    MomentReport r;
    r.q = ctx.q();
    r.g = g;
    r.s = s_grid[j];
    r.mode = opt.mode;
    r.sample_size = n;
    r.seed = opt.mode == Mode::Sample ? opt.seed : 0;
    r.at_transition = std::abs(r.s - 1.0 / 3.0) < 1e-9;
    CompensatedSum sum;
    for (std::size_t i = 0; i < n; ++i) sum += values[i * k + j];
    r.mean = sum.value() / static_cast<double>(n);
    r.mean_doubled = r.mean.real();
    if (opt.mode == Mode::Sample && n > 1) {
      double ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) ss += std::norm(values[i * k + j] - r.mean);
      r.std_error = std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)));
    }
    r.prediction = moment_prediction(ctx.q(), g, r.s, r.at_transition);
    r.envelope = moment_envelope(ctx.q(), g, r.s, r.at_transition);
    r.elapsed_ms = elapsed;
    r.coeff_sums = coeff_sums;
    r.sample_digest = digest;
    out.push_back(std::move(r));
  }
  return out;
}

MomentReport moment(const FieldCtx& ctx, int g, double s, const MomentOptions& opt) {
  return scan_s(ctx, g, {s}, opt).front();
}

SplitReport principal_dual_split(const FieldCtx& ctx, int g, double s, int A, const MomentOptions& opt) {
  check_s(s);
  if (A < 0) A = (3 * g) / 5;
  if (A > g) throw Error(Errc::BadSplit, "split index A must satisfy 0 <= A <= g");
  const std::vector<Poly> moduli = family_subset(ctx, g, opt);
  const std::size_t n = moduli.size();
  const int genus = 3 * g;
  const PrimeTable primes(ctx, (genus + 1) / 2);

  // per-character dual parts and direct values
  std::vector<Complex> dual(n), direct(n);
  std::vector<double> err(n);
  const std::size_t chunks = (n + kCharChunk - 1) / kCharChunk;
  parallel_chunks(chunks, opt.threads, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kCharChunk);
    for (std::size_t i = c * kCharChunk; i < end; ++i) {
      const LData L = compute_coeffs_euler(ctx, Character(ctx, moduli[i]), primes);
      const AfeParts parts = afe_odd(L, s, 3 * A);
      dual[i] = parts.dual;
      direct[i] = eval_L(L, s);
      err[i] = std::abs(parts.total() - direct[i]) / std::max(1.0, std::abs(direct[i]));
    }
  });

  // principal part: outer loop over f, inner loop over the characters
  Complex principal_sum;
  for (int deg = 0; deg <= 3 * A; ++deg) {
    const std::uint64_t count = ipow(ctx.q(), static_cast<unsigned>(deg));
    const std::size_t fchunks = static_cast<std::size_t>((count + 255) / 256);
    std::vector<Eisenstein> part(fchunks);
    parallel_chunks(fchunks, opt.threads, [&](std::size_t c) {
      Eisenstein acc;
      for (const Poly& f : enumerate_monic(ctx, deg, c * 256, 256)) {
        for (const Poly& F : moduli) {
          const Mu3 v = residue_symbol(ctx, f, F);
          if (!v.is_zero()) acc += Eisenstein::one().times_xi(v.exponent());
        }
      }
      part[c] = acc;
    });
    Eisenstein total;
    for (const auto& e : part) total += e;
    principal_sum += eisenstein_to_complex(total) * std::pow(double(ctx.q()), -s * deg);
  }

  SplitReport r;
  r.A = A;
  r.n = n;
  CompensatedSum ds, vs;
  for (std::size_t i = 0; i < n; ++i) {
    ds += dual[i];
    vs += direct[i];
    r.max_character_error = std::max(r.max_character_error, err[i]);
  }
  r.principal = principal_sum / static_cast<double>(n);
  r.dual = ds.value() / static_cast<double>(n);
  r.direct = vs.value() / static_cast<double>(n);
  return r;
}

}  // namespace cubic

#include "cubic/rmt.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <sstream>

#include "cubic/error.hpp"
#include "cubic/parallel.hpp"

namespace cubic {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p <= 0) throw Error(Errc::DomainError, "partition parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

Partition Partition::from_multiplicities(const std::vector<int>& mult) {
  std::vector<int> parts;
  for (std::size_t j = 0; j < mult.size(); ++j) {
    if (mult[j] < 0) throw Error(Errc::DomainError, "negative multiplicity");
    parts.insert(parts.end(), static_cast<std::size_t>(mult[j]), static_cast<int>(j + 1));
  }
  return Partition(std::move(parts));
}

int Partition::size() const {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

int Partition::multiplicity(int j) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), j)); }

std::string Partition::str() const {
  if (parts_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = 1; j <= parts_.front(); ++j) {
    const int m = multiplicity(j);
    if (m == 0) continue;
    if (!first) os << ' ';
    os << j << '^' << m;
    first = false;
  }
  return os.str();
}

namespace {

void partitions_rec(int left, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (left == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(left, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(left - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int m) {
  if (m < 0 || m > 40) throw Error(Errc::OutOfRange, "partitions_of supports 0 <= m <= 40");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(m, m, cur, out);
  return out;
}

BigInt z_of(const Partition& lambda) {
  BigInt z = 1;
  if (lambda.parts().empty()) return z;
  for (int j = 1; j <= lambda.parts().front(); ++j) {
    const int m = lambda.multiplicity(j);
    for (int i = 1; i <= m; ++i) z *= BigInt(j) * i;
  }
  return z;
}

WeightedIntegralExact weighted_integral_exact(int N) {
  if (N < 0 || N > 40) throw Error(Errc::OutOfRange, "weighted_integral_exact supports 0 <= N <= 40");
  // slots (j, mu): each contributes weight 3j per unit of a and factor 1/(j z_mu)
  std::vector<std::pair<int, Rational>> slots;
  for (int j = 1; 3 * j <= N; ++j) {
    for (const Partition& mu : partitions_of(3)) slots.emplace_back(3 * j, Rational(1, BigInt(j) * z_of(mu)));
  }
  Rational total = 0;
  // depth-first over the slots; value carries prod 1/a! c^a of the slots fixed so far
  std::function<void(std::size_t, int, const Rational&)> rec = [&](std::size_t k, int budget, const Rational& value) {
    if (k == slots.size()) {
      total += value;
      return;
    }
    const auto& [w, c] = slots[k];
    Rational term = value;
    for (int a = 0; a * w <= budget; ++a) {
      if (a > 0) term = term * c / a;
      rec(k + 1, budget - a * w, term);
    }
  };
  rec(0, N, Rational(1));
  return {N, total, N / 3 + 1};
}

Eigen::MatrixXcd haar_sample(int N, std::uint64_t seed, std::uint64_t index) {
  if (N < 1 || N > 64) throw Error(Errc::OutOfRange, "haar_sample supports 1 <= N <= 64");
  auto rng = stream_rng(seed, index);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd Z(N, N);
  for (int c = 0; c < N; ++c) {
    for (int r = 0; r < N; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      Z(r, c) = {re, im};
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd& R = qr.matrixQR();
  for (int i = 0; i < N; ++i) {
    const Complex d = R(i, i);
    const double a = std::abs(d);
    if (a > 0) Q.col(i) *= d / a;
  }
  return Q;
}

double unitarity_defect(const Eigen::MatrixXcd& U) {
  return (U * U.adjoint() - Eigen::MatrixXcd::Identity(U.rows(), U.cols())).norm();
}

Complex det_one_minus(const Eigen::MatrixXcd& U) {
  const Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(U.rows(), U.cols()) - U;
  return M.partialPivLu().determinant();
}

Eigen::MatrixXcd third_compound(const Eigen::MatrixXcd& U) {
  const int N = static_cast<int>(U.rows());
  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      for (int k = j + 1; k < N; ++k) triples.push_back({i, j, k});
    }
  }
  const auto n = static_cast<Eigen::Index>(triples.size());
  Eigen::MatrixXcd C(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto& r = triples[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto& c = triples[static_cast<std::size_t>(b)];
      const auto m = [&](int x, int y) { return U(r[x], c[y]); };
      C(a, b) = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
  }
  return C;
}

Complex det_one_minus_wedge3(const Eigen::MatrixXcd& U) {
  if (U.rows() > 20) throw Error(Errc::OutOfRange, "wedge determinant supports N <= 20");
  if (U.rows() < 3) return {1.0, 0.0};
  return det_one_minus(third_compound(U));
}

Complex mixed_trace(const Eigen::MatrixXcd& U, const Partition& lambda) {
  Complex v{1.0, 0.0};
  if (lambda.parts().empty()) return v;
  Eigen::MatrixXcd P = U;
  for (int j = 1; j <= lambda.parts().front(); ++j) {
    if (j > 1) P = P * U;
    const int m = lambda.multiplicity(j);
    if (m > 0) v *= std::pow(P.trace(), m);
  }
  return v;
}

namespace {

template <class Fn>
McEstimate monte_carlo(std::uint64_t samples, unsigned threads, double target, Fn sample) {
  if (samples < 2) throw Error(Errc::DomainError, "Monte-Carlo needs at least two samples");
  std::vector<Complex> x(samples);
  constexpr std::size_t chunk = 1024;
  const std::size_t chunks = static_cast<std::size_t>((samples + chunk - 1) / chunk);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min<std::size_t>(samples, (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) x[i] = sample(i);
  });
  Complex mean;
  for (const auto& v : x) mean += v;
  mean /= static_cast<double>(samples);
  double ss = 0.0;
  for (const auto& v : x) ss += std::norm(v - mean);
  McEstimate r;
  r.estimate = mean;
  r.sigma = std::sqrt(ss / (static_cast<double>(samples) * static_cast<double>(samples - 1)));
  r.target = target;
  r.samples = samples;
  return r;
}

}  // namespace

McEstimate weighted_integral_mc(int N, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (N < 1 || N > 12) throw Error(Errc::OutOfRange, "weighted_integral_mc supports 1 <= N <= 12");
  return monte_carlo(samples, threads, N / 3 + 1, [&](std::size_t i) {
    const Eigen::MatrixXcd U = haar_sample(N, seed, i);
    return det_one_minus(U) * std::conj(det_one_minus_wedge3(U));
  });
}

McEstimate diaconis_evans_check(int N, const Partition& lambda, const Partition& mu, std::uint64_t samples,
                                std::uint64_t seed, unsigned threads) {
  if (std::min(lambda.size(), mu.size()) > N) {
    throw Error(Errc::PartitionTooLarge, "orthogonality needs min(|lambda|, |mu|) <= N");
  }
  const double target = lambda == mu ? z_of(lambda).convert_to<double>() : 0.0;
  return monte_carlo(samples, threads, target, [&](std::size_t i) {
    const Eigen::MatrixXcd U = haar_sample(N, seed, i);
    return mixed_trace(U, lambda) * std::conj(mixed_trace(U, mu));
  });
}

std::map<Partition, Rational> newton_expand_det(int N) {
  if (N < 0 || N > 20) throw Error(Errc::OutOfRange, "newton_expand_det supports 0 <= N <= 20");
  std::map<Partition, Rational> out;
  for (int m = 0; m <= N; ++m) {
    for (const Partition& l : partitions_of(m)) {
      out.emplace(l, Rational((l.length() % 2 == 0) ? 1 : -1, z_of(l)));
    }
  }
  return out;
}

}  // namespace cubic

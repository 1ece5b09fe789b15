#ifndef CUBIC_RMT_HPP
#define CUBIC_RMT_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "cubic/algebra.hpp"

namespace cubic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer partition, parts stored in non-increasing order.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  /// From multiplicities: mult[j-1] = number of parts equal to j.
  static Partition from_multiplicities(const std::vector<int>& mult);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;    // |lambda|
  int length() const { return static_cast<int>(parts_.size()); }
  /// lambda_j, the number of parts equal to j
  int multiplicity(int j) const;
  std::string str() const;  // e.g. "1^2 2^1", "0" for the empty partition

  friend bool operator==(const Partition&, const Partition&) = default;
  /// Canonical order: reverse-lexicographic by parts, so 3 < 21 < 111.
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ > b.parts_; }

 private:
  std::vector<int> parts_;
};

/// All partitions of m in canonical order. Throws OutOfRange past m = 40.
std::vector<Partition> partitions_of(int m);

/// z_lambda = prod_j j^{lambda_j} lambda_j!
BigInt z_of(const Partition& lambda);

struct WeightedIntegralExact {
  int N = 0;
  Rational tuple_sum;
  std::int64_t closed_form = 0;  // floor(N/3) + 1
  bool agree() const { return tuple_sum == Rational(closed_form); }
};

/// Sum over tuples (a_{j,mu}), j >= 1, mu a partition of 3, with
/// sum_j,mu 3j a_{j,mu} <= N of prod 1/a! (1/(j z_mu))^a, in exact rationals.
WeightedIntegralExact weighted_integral_exact(int N);

/// Haar-distributed unitary matrix from the QR factorization of a complex
/// Gaussian matrix with the phases of R's diagonal moved into Q. Depends only
/// on (N, seed, index).
Eigen::MatrixXcd haar_sample(int N, std::uint64_t seed, std::uint64_t index = 0);

/// || U U^* - I ||_F
double unitarity_defect(const Eigen::MatrixXcd& U);

Complex det_one_minus(const Eigen::MatrixXcd& U);
/// Third compound matrix: entries are the 3x3 minors indexed by row and column triples.
Eigen::MatrixXcd third_compound(const Eigen::MatrixXcd& U);
/// det(1 - wedge^3 U) through the compound matrix; 1 for N < 3.
Complex det_one_minus_wedge3(const Eigen::MatrixXcd& U);

/// P_lambda(U) = prod_j Tr(U^j)^{lambda_j}
Complex mixed_trace(const Eigen::MatrixXcd& U, const Partition& lambda);

struct McEstimate {
  Complex estimate;
  double sigma = 0.0;  // standard error of the mean
  double target = 0.0;
  std::uint64_t samples = 0;
  /// |estimate - target| / sigma
  double z_score() const { return sigma > 0 ? std::abs(estimate - target) / sigma : (std::abs(estimate - target) > 0 ? 1e300 : 0.0); }
};

/// Monte-Carlo mean of det(1-U) conj(det(1 - wedge^3 U)) over U(N); target floor(N/3)+1.
McEstimate weighted_integral_mc(int N, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

/// Monte-Carlo mean of P_lambda(U) conj(P_mu(U)); target delta z_lambda.
/// Throws PartitionTooLarge if min(|lambda|, |mu|) > N.
McEstimate diaconis_evans_check(int N, const Partition& lambda, const Partition& mu, std::uint64_t samples,
                                std::uint64_t seed, unsigned threads = 1);

/// det(1-U) = sum_{|lambda| <= N} (-1)^{l(lambda)}/z_lambda P_lambda(U): the coefficient map.
std::map<Partition, Rational> newton_expand_det(int N);

}  // namespace cubic

#endif  // CUBIC_RMT_HPP

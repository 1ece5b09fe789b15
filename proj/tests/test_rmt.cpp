#include <doctest.h>

#include "cubic/rmt.hpp"

using namespace cubic;

TEST_CASE("partitions in canonical order") {
  std::vector<std::string> names;
  for (const Partition& p : partitions_of(4)) names.push_back(p.str());
  CHECK(names == std::vector<std::string>{"4^1", "1^1 3^1", "2^2", "1^2 2^1", "1^4"});
  CHECK(partitions_of(10).size() == 42);
  CHECK(partitions_of(0).size() == 1);
  CHECK(partitions_of(0).front().str() == "0");
  const auto p12 = partitions_of(12);
  CHECK(std::is_sorted(p12.begin(), p12.end()));
  CHECK_THROWS_AS(partitions_of(41), Error);
  CHECK(Partition::from_multiplicities({2, 1}) == Partition({2, 1, 1}));
}

TEST_CASE("z_lambda") {
  CHECK(z_of(Partition({3})) == 3);
  CHECK(z_of(Partition({1, 1, 1})) == 6);
  CHECK(z_of(Partition({2, 1, 1})) == 4);
  CHECK(z_of(Partition()) == 1);
  for (int r = 0; r <= 12; ++r) {
    Rational s = 0;
    for (const Partition& l : partitions_of(r)) s += Rational(1, z_of(l));
    CHECK(s == 1);
  }
}

TEST_CASE("weighted integral tuple sum") {
  for (int N = 0; N <= 15; ++N) {
    const auto r = weighted_integral_exact(N);
    CHECK(r.closed_form == N / 3 + 1);
    CHECK(r.agree());
  }
}

TEST_CASE("Newton expansion reproduces det(1 - U)") {
  for (int N : {1, 3, 5}) {
    const auto coeffs = newton_expand_det(N);
    const Eigen::MatrixXcd U = haar_sample(N, 17, 0);
    Complex s;
    for (const auto& [lambda, c] : coeffs) s += c.convert_to<double>() * mixed_trace(U, lambda);
    CHECK(std::abs(s - det_one_minus(U)) < 1e-10);
  }
}

TEST_CASE("Haar samples") {
  for (int N : {1, 4, 12}) {
    const Eigen::MatrixXcd U = haar_sample(N, 3, 9);
    CHECK(unitarity_defect(U) < 1e-12);
    CHECK(haar_sample(N, 3, 9) == U);
    CHECK(haar_sample(N, 3, 10) != U);
  }
  CHECK_THROWS_AS(haar_sample(0, 1), Error);
}

TEST_CASE("third compound of a diagonal matrix") {
  const int N = 5;
  Eigen::VectorXcd d(N);
  for (int i = 0; i < N; ++i) d(i) = std::polar(1.0, 0.7 * i + 0.3);
  const Eigen::MatrixXcd U = d.asDiagonal();
  Complex want{1.0, 0.0};
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      for (int k = j + 1; k < N; ++k) want *= 1.0 - d(i) * d(j) * d(k);
    }
  }
  CHECK(std::abs(det_one_minus_wedge3(U) - want) < 1e-12);
  CHECK(det_one_minus_wedge3(haar_sample(2, 1)) == Complex(1.0, 0.0));
}

TEST_CASE("third compound is multiplicative") {
  const Eigen::MatrixXcd A = haar_sample(6, 1, 0), B = haar_sample(6, 1, 1);
  CHECK((third_compound(A * B) - third_compound(A) * third_compound(B)).norm() < 1e-10);
  CHECK(unitarity_defect(third_compound(A)) < 1e-10);
}

TEST_CASE("Monte-Carlo estimators, short runs") {
  const McEstimate w = weighted_integral_mc(3, 4000, 21, 2);
  CHECK(w.target == 2.0);
  CHECK(w.z_score() < 4.0);
  const McEstimate w2 = weighted_integral_mc(3, 4000, 21, 1);
  CHECK(w.estimate == w2.estimate);
  const McEstimate de = diaconis_evans_check(4, Partition({1}), Partition({1}), 4000, 8);
  CHECK(de.target == 1.0);
  CHECK(de.z_score() < 4.0);
  CHECK_THROWS_AS(diaconis_evans_check(2, Partition({1, 1, 1}), Partition({3}), 10, 1), Error);
}

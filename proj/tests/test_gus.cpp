#include "qppm/gus.hpp"

#include "qppm/linalg.hpp"

#include <doctest.h>

#include <complex>
#include <numbers>
#include <random>

using namespace qppm;
using gus::Matrix;
using linalg::Complex;

namespace {

Matrix random_unit(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Matrix v(n, 1);
  for (int i = 0; i < n; ++i) v(i, 0) = Complex(g(rng), g(rng));
  return v / v.norm();
}

}  // namespace

TEST_CASE("shuffle index map basics") {
  const gus::ShuffleOperator s(2, 4);
  CHECK(s.dim() == 16);
  CHECK(s.apply_index(0) == 0);
  CHECK(s.apply_index(15) == 15);
  // Digit right-rotation: index k maps to k * n^(m-1) mod (n^m - 1).
  CHECK(s.apply_index(2) == 1);
  CHECK(s.apply_index(1) == 8);
  CHECK(s.cycle_next(1) == 2);
  CHECK(s.power_index(3, 4) == 3);   // period m
  CHECK(s.power_index(s.apply_index(3), -1) == 3);
  CHECK_THROWS_AS(gus::ShuffleOperator(1, 4), std::invalid_argument);
}

TEST_CASE("dense shuffle matrix for n=2, m=4") {
  const Matrix s = gus::ShuffleOperator(2, 4).dense();
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      // Row i has its one in column j = 2i mod 15 (all-max word fixed).
      const bool one = (i == 15 && j == 15) || (i < 15 && j == (2 * i) % 15);
      CHECK(s(i, j).real() == doctest::Approx(one ? 1.0 : 0.0));
      CHECK(s(i, j).imag() == 0.0);
    }
  }
  // It is a permutation with S^m = I.
  Matrix p = Matrix::Identity(16, 16);
  for (int t = 0; t < 4; ++t) p = s * p;
  CHECK((p - Matrix::Identity(16, 16)).norm() < 1e-14);
}

TEST_CASE("shuffle action on kronecker products rotates the slots") {
  std::mt19937 rng(99);
  const gus::ShuffleOperator s(3, 3);
  const Matrix x0 = random_unit(3, rng), x1 = random_unit(3, rng), x2 = random_unit(3, rng);
  const Matrix v = linalg::kron(linalg::kron(x2, x1), x0);
  const Matrix sv = gus::apply_symmetry_power(s, 1, v);
  // New slot content: y_j = x_{(j+1) mod 3}.
  const Matrix expected = linalg::kron(linalg::kron(x0, x2), x1);
  CHECK((sv - expected).norm() < 1e-13);
}

TEST_CASE("cycles for n=2, m=4 match the known orbit lists") {
  const auto dec = gus::cycles(2, 4);
  REQUIRE(dec.cycles.size() == 6);
  using V = std::vector<std::int64_t>;
  CHECK(dec.cycles[0].members == V{0});
  CHECK(dec.cycles[1].members == V{15});
  CHECK(dec.cycles[2].members == V{5, 10});
  CHECK(dec.cycles[3].members == V{1, 2, 4, 8});
  CHECK(dec.cycles[4].members == V{3, 6, 12, 9});
  CHECK(dec.cycles[5].members == V{7, 14, 13, 11});
  CHECK(dec.count_for_period(1) == 2);
  CHECK(dec.count_for_period(2) == 2);
  CHECK(dec.count_for_period(4) == 12);
}

TEST_CASE("cycle counts for n=2, m=10") {
  const auto dec = gus::cycles(2, 10);
  CHECK(dec.count_for_period(1) == 2);
  CHECK(dec.count_for_period(2) == 2);
  CHECK(dec.count_for_period(5) == 30);
  CHECK(dec.count_for_period(10) == 990);
  int c1 = 0, c2 = 0, c5 = 0, c10 = 0;
  for (const auto& c : dec.cycles) {
    if (c.period == 1) ++c1;
    if (c.period == 2) ++c2;
    if (c.period == 5) ++c5;
    if (c.period == 10) ++c10;
  }
  CHECK(c1 == 2);
  CHECK(c2 == 1);
  CHECK(c5 == 6);
  CHECK(c10 == 99);
}

TEST_CASE("eigenvalue multiplicities") {
  CHECK(gus::count_multiplicities(2, 4) == std::vector<std::int64_t>({6, 3, 4, 3}));
  CHECK(gus::count_multiplicities(2, 10) ==
        std::vector<std::int64_t>({108, 99, 105, 99, 105, 100, 105, 99, 105, 99}));
  for (int n = 2; n <= 6; ++n) {
    const auto mult = gus::count_multiplicities(n, 2);
    CHECK(mult[0] == (n * n + n) / 2);
    CHECK(mult[1] == (n * n - n) / 2);
  }
}

TEST_CASE("enumerated and arithmetic member counts agree") {
  for (int n = 2; n <= 4; ++n) {
    for (int m = 2; m <= 8; ++m) {
      if (std::pow(n, m) > 70000) continue;
      const auto dec = gus::cycles(n, m);
      const auto mult = gus::count_multiplicities(n, m);
      std::int64_t total_mult = 0;
      for (auto x : mult) total_mult += x;
      std::int64_t total_members = 0;
      for (const auto& [p, np] : dec.counts) {
        total_members += np;
        // N_p from enumeration equals the arithmetic recursion through n_0:
        // every period-p family contributes N_p/p eigenvectors per eligible h.
        CHECK(np % p == 0);
      }
      const std::int64_t dim = static_cast<std::int64_t>(std::llround(std::pow(n, m)));
      CHECK(total_members == dim);
      CHECK(total_mult == dim);
      // n_0 counts one eigenvector per cycle.
      CHECK(mult[0] == static_cast<std::int64_t>(dec.cycles.size()));
    }
  }
}

TEST_CASE("spectrum reconstructs the operator and is orthonormal") {
  for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 4}, std::pair{3, 3}}) {
    const auto spec = gus::spectrum(n, m);
    const auto mult = gus::count_multiplicities(n, m);
    CHECK(spec.multiplicities() == mult);

    const std::int64_t dim = gus::ShuffleOperator(n, m).dim();
    const Matrix s = gus::ShuffleOperator(n, m).dense();
    Matrix rec = Matrix::Zero(dim, dim);
    Matrix all(dim, 0);
    for (int k = 0; k < m; ++k) {
      const Matrix y = spec.family(k);
      CHECK(y.cols() == mult[static_cast<std::size_t>(k)]);
      const Complex w = std::polar(1.0, -2.0 * std::numbers::pi * k / m);
      rec += w * (y * y.adjoint());
      CHECK((y.adjoint() * y - Matrix::Identity(y.cols(), y.cols())).norm() < 1e-12);
      Matrix grown(dim, all.cols() + y.cols());
      grown << all, y;
      all = grown;
    }
    CHECK((rec - s).norm() < 1e-12);
    CHECK((all.adjoint() * all - Matrix::Identity(dim, dim)).norm() < 1e-12);
  }
}

TEST_CASE("permutation powers match the dense matrix") {
  const gus::ShuffleOperator s(3, 2);
  const Matrix dense = s.dense();
  std::mt19937 rng(5);
  const Matrix x = random_unit(9, rng);
  for (long t : {-2L, -1L, 0L, 1L, 2L, 3L}) {
    Matrix st = Matrix::Identity(9, 9);
    for (long i = 0; i < ((t % 2) + 2) % 2; ++i) st = dense * st;
    CHECK((gus::apply_symmetry_power(s, t, x) - st * x).norm() < 1e-14);
  }
  CHECK((gus::apply_symmetry_power(s, 2, x) - x).norm() == 0.0);  // S^m = I
}

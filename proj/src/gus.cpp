#include "qppm/gus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qppm::gus {

namespace {

std::int64_t checked_pow(int n, int m) {
  std::int64_t out = 1;
  for (int i = 0; i < m; ++i) {
    if (out > (std::int64_t{1} << 62) / n) {
      throw std::overflow_error("n^m does not fit in 64 bits");
    }
    out *= n;
  }
  return out;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t mod) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % mod);
}

}  // namespace

ShuffleOperator::ShuffleOperator(int n, int m) : n_(n), m_(m) {
  if (n < 2 || m < 2) {
    throw std::invalid_argument("ShuffleOperator: need n >= 2 and m >= 2");
  }
  dim_ = checked_pow(n, m);
}

std::int64_t ShuffleOperator::power_index(std::int64_t k, long t) const {
  const std::int64_t mod = dim_ - 1;
  if (k == mod) return k;
  long r = (-t) % m_;
  if (r < 0) r += m_;
  std::int64_t factor = 1;
  for (long i = 0; i < r; ++i) factor *= n_;
  return mulmod(k, factor, mod);
}

std::int64_t ShuffleOperator::cycle_next(std::int64_t k) const {
  const std::int64_t mod = dim_ - 1;
  if (k == mod) return k;
  return mulmod(k, n_, mod);
}

Matrix ShuffleOperator::dense(std::int64_t cap) const {
  if (dim_ > cap) {
    throw std::invalid_argument("ShuffleOperator::dense: dim " + std::to_string(dim_) +
                                " exceeds cap " + std::to_string(cap));
  }
  Matrix s = Matrix::Zero(dim_, dim_);
  for (std::int64_t k = 0; k < dim_; ++k) {
    s(apply_index(k), k) = 1.0;
  }
  return s;
}

std::int64_t CycleDecomposition::count_for_period(int p) const {
  for (const auto& [period, count] : counts) {
    if (period == p) return count;
  }
  return 0;
}

CycleDecomposition cycles(int n, int m) {
  const ShuffleOperator s(n, m);
  const std::int64_t dim = s.dim();
  if (dim > (std::int64_t{1} << 24)) {
    throw std::invalid_argument("cycles: enumeration refused above 2^24 indexes");
  }
  std::vector<bool> visited(static_cast<std::size_t>(dim), false);
  CycleDecomposition out;
  out.n = n;
  out.m = m;
  for (std::int64_t k = 0; k < dim; ++k) {
    if (visited[static_cast<std::size_t>(k)]) continue;
    Cycle c;
    c.representative = k;
    std::int64_t cur = k;
    do {
      c.members.push_back(cur);
      visited[static_cast<std::size_t>(cur)] = true;
      cur = s.cycle_next(cur);
    } while (cur != k);
    c.period = static_cast<int>(c.members.size());
    out.cycles.push_back(std::move(c));
  }
  std::stable_sort(out.cycles.begin(), out.cycles.end(), [](const Cycle& a, const Cycle& b) {
    return a.period != b.period ? a.period < b.period : a.representative < b.representative;
  });
  for (const Cycle& c : out.cycles) {
    if (out.counts.empty() || out.counts.back().first != c.period) {
      out.counts.emplace_back(c.period, 0);
    }
    out.counts.back().second += c.period;
  }
  return out;
}

std::vector<std::int64_t> count_multiplicities(int n, int m) {
  if (n < 2 || m < 2) {
    throw std::invalid_argument("count_multiplicities: need n >= 2 and m >= 2");
  }
  std::vector<int> divisors;
  for (int p = 1; p <= m; ++p) {
    if (m % p == 0) divisors.push_back(p);
  }
  // N_p from n^p = sum_{d|p} N_d.
  std::vector<std::int64_t> np(divisors.size());
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    std::int64_t val = checked_pow(n, divisors[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (divisors[i] % divisors[j] == 0) val -= np[j];
    }
    np[i] = val;
  }
  std::vector<std::int64_t> mult(static_cast<std::size_t>(m), 0);
  for (int h = 0; h < m; ++h) {
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const int p = divisors[i];
      if (h % (m / p) == 0) mult[static_cast<std::size_t>(h)] += np[i] / p;
    }
  }
  return mult;
}

std::vector<std::int64_t> SymmetrySpectrum::multiplicities() const {
  std::vector<std::int64_t> out(recipes.size());
  for (std::size_t i = 0; i < recipes.size(); ++i) {
    out[i] = static_cast<std::int64_t>(recipes[i].size());
  }
  return out;
}

Matrix SymmetrySpectrum::family(int i) const {
  const std::int64_t dim = checked_pow(n, m);
  const auto& list = recipes.at(static_cast<std::size_t>(i));
  Matrix y = Matrix::Zero(dim, static_cast<Eigen::Index>(list.size()));
  for (std::size_t col = 0; col < list.size(); ++col) {
    const Cycle& c = decomposition.cycles[list[col].first];
    const int j = list[col].second;
    const double norm = 1.0 / std::sqrt(static_cast<double>(c.period));
    for (int h = 0; h < c.period; ++h) {
      const double angle = -2.0 * std::numbers::pi * j * h / c.period;
      y(c.members[static_cast<std::size_t>(h)], static_cast<Eigen::Index>(col)) =
          std::polar(norm, angle);
    }
  }
  return y;
}

SymmetrySpectrum spectrum(int n, int m) {
  SymmetrySpectrum out;
  out.n = n;
  out.m = m;
  out.decomposition = cycles(n, m);
  out.recipes.resize(static_cast<std::size_t>(m));
  for (std::size_t ci = 0; ci < out.decomposition.cycles.size(); ++ci) {
    const int p = out.decomposition.cycles[ci].period;
    for (int j = 0; j < p; ++j) {
      // W_p^{-j} = W_m^{-j*m/p}
      out.recipes[static_cast<std::size_t>(j * (m / p))].emplace_back(ci, j);
    }
  }
  return out;
}

Matrix apply_symmetry_power(const ShuffleOperator& s, long t, const Matrix& x) {
  if (x.rows() != s.dim()) {
    throw std::invalid_argument("apply_symmetry_power: row count " + std::to_string(x.rows()) +
                                " does not match operator dim " + std::to_string(s.dim()));
  }
  Matrix out(x.rows(), x.cols());
  for (std::int64_t k = 0; k < s.dim(); ++k) {
    out.row(s.power_index(k, t)) = x.row(k);
  }
  return out;
}

}  // namespace qppm::gus

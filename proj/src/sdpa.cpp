#include "qppm/sdpa.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace qppm::sdpa {

namespace {

void push_entry(SdpProblem& p, int matno, int block, int row, int col, double value) {
  if (value == 0.0) return;
  p.entries.push_back(SdpEntry{matno, block, row, col, value});
}

}  // namespace

SdpProblem build_povm_problem(const std::vector<Matrix>& rhos) {
  if (rhos.empty()) throw std::invalid_argument("build_povm_problem: no density operators");
  const int m = static_cast<int>(rhos.size());
  const int n = static_cast<int>(rhos[0].rows());
  for (const Matrix& rho : rhos) {
    if (rho.rows() != n || rho.cols() != n) {
      throw std::invalid_argument("build_povm_problem: density operators must share one size");
    }
  }

  SdpProblem p;
  p.block_sizes.assign(static_cast<std::size_t>(m), 2 * n);

  // F0: embedded rho_i / (2m) on block i (upper triangle, 1-based).
  const double scale = 1.0 / (2.0 * m);
  for (int i = 0; i < m; ++i) {
    const Matrix& rho = rhos[static_cast<std::size_t>(i)];
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        const double re = rho(a, b).real() * scale;
        push_entry(p, 0, i + 1, a + 1, b + 1, re);
        push_entry(p, 0, i + 1, n + a + 1, n + b + 1, re);
      }
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        push_entry(p, 0, i + 1, a + 1, n + b + 1, -rho(a, b).imag() * scale);
      }
    }
  }

  // Completeness sum_i Pi_i = I: N diagonal constraints (rhs 2, the embedding
  // doubles traces), then per pair a < b one real-part and one imaginary-part
  // constraint (rhs 0). Each constraint matrix repeats on every block.
  int matno = 0;
  for (int a = 0; a < n; ++a) {
    ++matno;
    p.rhs.push_back(2.0);
    for (int i = 0; i < m; ++i) {
      push_entry(p, matno, i + 1, a + 1, a + 1, 1.0);
      push_entry(p, matno, i + 1, n + a + 1, n + a + 1, 1.0);
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      ++matno;
      p.rhs.push_back(0.0);
      for (int i = 0; i < m; ++i) {
        push_entry(p, matno, i + 1, a + 1, b + 1, 1.0);
        push_entry(p, matno, i + 1, n + a + 1, n + b + 1, 1.0);
      }
      ++matno;
      p.rhs.push_back(0.0);
      for (int i = 0; i < m; ++i) {
        push_entry(p, matno, i + 1, a + 1, n + b + 1, -1.0);
        push_entry(p, matno, i + 1, b + 1, n + a + 1, 1.0);
      }
    }
  }
  return p;
}

void write_sdpa(const SdpProblem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_sdpa: cannot open " + path);
  out << p.rhs.size() << "\n";
  out << p.block_sizes.size() << "\n";
  for (std::size_t i = 0; i < p.block_sizes.size(); ++i) {
    out << (i ? " " : "") << p.block_sizes[i];
  }
  out << "\n";
  char buf[64];
  for (std::size_t i = 0; i < p.rhs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p.rhs[i]);
    out << (i ? " " : "") << buf;
  }
  out << "\n";
  for (const SdpEntry& e : p.entries) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    out << e.matno << " " << e.block << " " << e.row << " " << e.col << " " << buf << "\n";
  }
  if (!out) throw std::runtime_error("write_sdpa: write failed for " + path);
}

SdpProblem parse_sdpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_sdpa: cannot open " + path);
  std::size_t mdim = 0;
  std::size_t nblocks = 0;
  if (!(in >> mdim >> nblocks)) throw std::runtime_error("parse_sdpa: bad header in " + path);
  SdpProblem p;
  p.block_sizes.resize(nblocks);
  for (int& s : p.block_sizes) {
    if (!(in >> s)) throw std::runtime_error("parse_sdpa: bad block sizes in " + path);
  }
  p.rhs.resize(mdim);
  for (double& c : p.rhs) {
    if (!(in >> c)) throw std::runtime_error("parse_sdpa: bad rhs vector in " + path);
  }
  SdpEntry e;
  while (in >> e.matno >> e.block >> e.row >> e.col >> e.value) {
    if (e.matno < 0 || static_cast<std::size_t>(e.matno) > mdim || e.block < 1 ||
        static_cast<std::size_t>(e.block) > nblocks) {
      throw std::runtime_error("parse_sdpa: entry out of range in " + path);
    }
    p.entries.push_back(e);
  }
  if (!in.eof()) throw std::runtime_error("parse_sdpa: malformed entry in " + path);
  return p;
}

}  // namespace qppm::sdpa

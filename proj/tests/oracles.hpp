#pragma once

// Independent reference computations used only by the tests. Each one works
// from first principles (explicit index formulas, Kronecker products,
// brute-force enumeration) rather than calling the library routine it checks.

#include <algorithm>
#include <complex>
#include <functional>
#include <set>
#include <vector>

#include "tuhf/matrix.hpp"

namespace oracle {

using tuhf::Complex;
using tuhf::ComplexMatrix;
using Blocks = std::vector<std::vector<unsigned>>;

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t p = a.dim(), q = b.dim();
  ComplexMatrix out(p * q);
  for (std::size_t r1 = 0; r1 < p; ++r1)
    for (std::size_t c1 = 0; c1 < p; ++c1)
      for (std::size_t r2 = 0; r2 < q; ++r2)
        for (std::size_t c2 = 0; c2 < q; ++c2) out(r1 * q + r2, c1 * q + c2) = a(r1, c1) * b(r2, c2);
  return out;
}

// Diagonal support of I_s (x) e_i (x) I_t inside M_{k s t}, via the
// Kronecker product itself.
inline Blocks alternating_blocks_by_kron(std::size_t k, std::size_t s, std::size_t t) {
  Blocks out(k);
  for (std::size_t i = 0; i < k; ++i) {
    ComplexMatrix e(k);
    e(i, i) = 1.0;
    const ComplexMatrix big = kron(kron(ComplexMatrix::identity(s), e), ComplexMatrix::identity(t));
    for (std::size_t x = 0; x < big.dim(); ++x) {
      if (big(x, x) != Complex{}) out[i].push_back(static_cast<unsigned>(x + 1));
    }
  }
  return out;
}

// Block i = {a k t + (i-1) t + b : 0 <= a < s, 1 <= b <= t}.
inline Blocks alternating_blocks_by_formula(std::size_t k, std::size_t s, std::size_t t) {
  Blocks out(k);
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 1; b <= t; ++b) out[i - 1].push_back(static_cast<unsigned>(a * k * t + (i - 1) * t + b));
  for (auto& blk : out) std::sort(blk.begin(), blk.end());
  return out;
}

inline bool is_ordered_partition(const Blocks& blocks, std::size_t m) {
  std::set<unsigned> seen;
  for (const auto& b : blocks) {
    if (b.size() != blocks.front().size()) return false;
    for (unsigned x : b) {
      if (x < 1 || x > m || !seen.insert(x).second) return false;
    }
  }
  if (seen.size() != m) return false;
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
    auto a = blocks[i], b = blocks[i + 1];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t l = 0; l < a.size(); ++l) {
      if (a[l] >= b[l]) return false;
    }
  }
  return true;
}

// All ordered partitions of {1..m} into n blocks, by testing every map
// {1..m} -> {1..n}.
inline std::vector<Blocks> brute_force_partitions(std::size_t m, std::size_t n) {
  std::vector<Blocks> out;
  std::vector<unsigned> assign(m, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (x == m) {
      Blocks blocks(n);
      for (std::size_t y = 0; y < m; ++y) blocks[assign[y]].push_back(static_cast<unsigned>(y + 1));
      if (is_ordered_partition(blocks, m)) out.push_back(blocks);
      return;
    }
    for (unsigned b = 0; b < n; ++b) {
      assign[x] = b;
      rec(x + 1);
    }
  };
  rec(0);
  return out;
}

// Block (i, a) of phi (x) psi, written out from the tensor index layout.
inline Blocks tensor_blocks(const Blocks& phi, const Blocks& psi, std::size_t psi_to) {
  Blocks out;
  for (const auto& pi : phi) {
    for (const auto& qa : psi) {
      std::vector<unsigned> blk;
      for (unsigned i2 : pi)
        for (unsigned b : qa) blk.push_back(static_cast<unsigned>((i2 - 1) * psi_to + b));
      std::sort(blk.begin(), blk.end());
      out.push_back(blk);
    }
  }
  return out;
}

inline ComplexMatrix unit(std::size_t k, std::size_t r, std::size_t c) {
  ComplexMatrix m(k);
  m(r, c) = 1.0;
  return m;
}

// Block index of every element, found by scanning the blocks.
inline std::vector<unsigned> block_index(const Blocks& blocks, std::size_t m) {
  std::vector<unsigned> out(m + 1, 0);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (unsigned x : blocks[i]) out[x] = static_cast<unsigned>(i + 1);
  return out;
}

// a precedes-or-equals b: at the first element whose block differs, a's block is smaller.
inline bool precedes_or_equal(const Blocks& a, const Blocks& b, std::size_t m) {
  const auto ia = block_index(a, m), ib = block_index(b, m);
  for (std::size_t x = 1; x <= m; ++x) {
    if (ia[x] != ib[x]) return ia[x] < ib[x];
  }
  return true;
}

// Block i of phi(a): the union of phi's blocks indexed by a's block i.
inline Blocks compose_blocks(const Blocks& phi, const Blocks& a) {
  Blocks out;
  for (const auto& ai : a) {
    std::vector<unsigned> blk;
    for (unsigned e : ai) blk.insert(blk.end(), phi[e - 1].begin(), phi[e - 1].end());
    std::sort(blk.begin(), blk.end());
    out.push_back(blk);
  }
  return out;
}

// Disjoint sorted nonempty blocks inside {1..m}, sizes weakly decreasing,
// and l-th elements increasing along consecutive blocks.
inline bool is_ordered_subpartition(const Blocks& blocks, std::size_t m) {
  std::set<unsigned> seen;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (b.empty() || !std::is_sorted(b.begin(), b.end())) return false;
    if (i > 0 && b.size() > blocks[i - 1].size()) return false;
    for (unsigned x : b) {
      if (x < 1 || x > m || !seen.insert(x).second) return false;
    }
    if (i > 0) {
      for (std::size_t l = 0; l < b.size(); ++l) {
        if (blocks[i - 1][l] >= b[l]) return false;
      }
    }
  }
  return true;
}

}  // namespace oracle

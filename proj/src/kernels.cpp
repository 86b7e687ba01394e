#include "tuhf/kernels.hpp"

#include <algorithm>
#include <cstdint>

#include <omp.h>

namespace tuhf::kernels {

namespace serial {

std::vector<Index> compose_assignment(std::span<const Index> outer, std::span<const Index> inner) {
  std::vector<Index> out(outer.size());
  for (std::size_t x = 0; x < outer.size(); ++x) out[x] = inner[outer[x] - 1];
  return out;
}

std::vector<Index> alternating_assignment(std::size_t k, std::size_t s, std::size_t t) {
  std::vector<Index> out(k * s * t);
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = static_cast<Index>((x / t) % k + 1);
  return out;
}

std::vector<Index> tensor_assignment(std::span<const Index> phi, std::span<const Index> psi,
                                     std::size_t psi_blocks) {
  std::vector<Index> out(phi.size() * psi.size());
  for (std::size_t a = 0; a < phi.size(); ++a) {
    for (std::size_t b = 0; b < psi.size(); ++b) {
      out[a * psi.size() + b] = static_cast<Index>((phi[a] - 1) * psi_blocks + psi[b]);
    }
  }
  return out;
}

void apply_rank_pairing(std::span<const Complex> source, std::size_t k,
                        std::span<const Index> elements, std::size_t block_size,
                        std::span<Complex> target, std::size_t k_to) {
  std::fill(target.begin(), target.end(), Complex{});
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const Complex a = source[i * k + j];
      if (a == Complex{}) continue;
      for (std::size_t l = 0; l < block_size; ++l) {
        const std::size_t r = elements[i * block_size + l] - 1;
        const std::size_t c = elements[j * block_size + l] - 1;
        target[r * k_to + c] += a;
      }
    }
  }
}

}  // namespace serial

namespace parallel {

std::vector<Index> compose_assignment(std::span<const Index> outer, std::span<const Index> inner) {
  std::vector<Index> out(outer.size());
  const auto n = static_cast<std::int64_t>(outer.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x) out[x] = inner[outer[x] - 1];
  return out;
}

std::vector<Index> alternating_assignment(std::size_t k, std::size_t s, std::size_t t) {
  std::vector<Index> out(k * s * t);
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x) {
    out[x] = static_cast<Index>((static_cast<std::size_t>(x) / t) % k + 1);
  }
  return out;
}

std::vector<Index> tensor_assignment(std::span<const Index> phi, std::span<const Index> psi,
                                     std::size_t psi_blocks) {
  std::vector<Index> out(phi.size() * psi.size());
  const auto rows = static_cast<std::int64_t>(phi.size());
  const std::size_t width = psi.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < rows; ++a) {
    const std::size_t base = (phi[a] - 1) * psi_blocks;
    for (std::size_t b = 0; b < width; ++b) {
      out[a * width + b] = static_cast<Index>(base + psi[b]);
    }
  }
  return out;
}

void apply_rank_pairing(std::span<const Complex> source, std::size_t k,
                        std::span<const Index> elements, std::size_t block_size,
                        std::span<Complex> target, std::size_t k_to) {
  std::fill(target.begin(), target.end(), Complex{});
  // Distinct units (i, j) land on disjoint target cells, so rows of the
  // source can be processed independently.
  const auto rows = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const Complex a = source[i * k + j];
      if (a == Complex{}) continue;
      for (std::size_t l = 0; l < block_size; ++l) {
        const std::size_t r = elements[i * block_size + l] - 1;
        const std::size_t c = elements[j * block_size + l] - 1;
        target[r * k_to + c] += a;
      }
    }
  }
}

}  // namespace parallel

}  // namespace tuhf::kernels

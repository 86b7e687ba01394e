#pragma once

// Data-parallel inner loops. Each kernel has a plain serial reference in
// kernels::serial and an OpenMP version in kernels::parallel; the two must
// produce identical output (tests and bench_kernels compare them).

#include <complex>
#include <span>
#include <vector>

#include "tuhf/common.hpp"

namespace tuhf::kernels {

using Complex = std::complex<double>;

namespace serial {

// result[x] = inner[outer[x] - 1]
std::vector<Index> compose_assignment(std::span<const Index> outer, std::span<const Index> inner);

// Block assignment of the I_s (x) A (x) I_t diagonal pattern on k*s*t points.
std::vector<Index> alternating_assignment(std::size_t k, std::size_t s, std::size_t t);

// Assignment of the tensor embedding: element (a-1)*psi_size + b maps to
// unit (phi[a]-1)*psi_blocks + psi[b].
std::vector<Index> tensor_assignment(std::span<const Index> phi, std::span<const Index> psi,
                                     std::size_t psi_blocks);

// Linear extension of rank-paired matrix units. `source` is k x k
// row-major, `elements` holds each block's sorted elements block-major
// (block_size entries per block), `target` is k' x k' row-major and is
// overwritten.
void apply_rank_pairing(std::span<const Complex> source, std::size_t k,
                        std::span<const Index> elements, std::size_t block_size,
                        std::span<Complex> target, std::size_t k_to);

}  // namespace serial

namespace parallel {

std::vector<Index> compose_assignment(std::span<const Index> outer, std::span<const Index> inner);
std::vector<Index> alternating_assignment(std::size_t k, std::size_t s, std::size_t t);
std::vector<Index> tensor_assignment(std::span<const Index> phi, std::span<const Index> psi,
                                     std::size_t psi_blocks);
void apply_rank_pairing(std::span<const Complex> source, std::size_t k,
                        std::span<const Index> elements, std::size_t block_size,
                        std::span<Complex> target, std::size_t k_to);

}  // namespace parallel

}  // namespace tuhf::kernels

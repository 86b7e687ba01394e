#pragma once

// Dense complex matrices at a single finite level, the normalizer
// decomposition v = d w, and phase straightening of level images.
// Matrix rows and columns are 0-based; embedding units stay 1-based.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tuhf/embedding.hpp"

namespace tuhf {

using Complex = std::complex<double>;

inline constexpr double kUnimodularTolerance = 1e-9;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t k) : k_(k), data_(k * k) {}

  static ComplexMatrix identity(std::size_t k);

  std::size_t dim() const { return k_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * k_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * k_ + c]; }
  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix adjoint() const;
  bool is_upper_triangular() const;

  // "dim <k>" then k lines of k "re,im" pairs.
  static ComplexMatrix parse(std::string_view text);
  std::string to_string() const;

 private:
  std::size_t k_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

// Element of T_k: strictly lower entries are exactly zero.
class UpperTriangular {
 public:
  explicit UpperTriangular(ComplexMatrix m);
  explicit UpperTriangular(std::size_t k) : m_(k) {}

  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  // Writes entry (r, c); r > c is rejected.
  void set(std::size_t r, std::size_t c, Complex value);

 private:
  ComplexMatrix m_;
};

// 0/1 matrix with at most one 1 per row and column, upper triangular.
class PartialPermutationMatrix {
 public:
  explicit PartialPermutationMatrix(std::size_t k) : row_of_column_(k) {}

  std::size_t dim() const { return row_of_column_.size(); }
  // Puts a 1 at (row, column).
  void assign(std::size_t column, std::size_t row);
  std::optional<std::size_t> row_of(std::size_t column) const { return row_of_column_[column]; }
  std::optional<std::size_t> column_of(std::size_t row) const;

  ComplexMatrix to_dense() const;

  friend bool operator==(const PartialPermutationMatrix&, const PartialPermutationMatrix&) = default;

 private:
  std::vector<std::optional<std::size_t>> row_of_column_;
};

class DiagonalUnitary {
 public:
  explicit DiagonalUnitary(std::size_t k) : phases_(k, Complex{1.0, 0.0}) {}
  explicit DiagonalUnitary(std::vector<Complex> phases);

  std::size_t dim() const { return phases_.size(); }
  const Complex& phase(std::size_t i) const { return phases_[i]; }
  void set_phase(std::size_t i, Complex value);
  const std::vector<Complex>& phases() const { return phases_; }

  ComplexMatrix to_dense() const;

 private:
  std::vector<Complex> phases_;
};

// Linear extension of image_of_unit to all of T_k.
UpperTriangular apply_to_matrix(const RegularEmbedding& e, const UpperTriangular& m);

struct NormalizerSplit {
  DiagonalUnitary d;
  PartialPermutationMatrix w;
};

// V = D W with W the support pattern of V and D the phases of V on the
// rows of that support (1 elsewhere).
NormalizerSplit normalizer_split(const UpperTriangular& v);

// images[i] is the split of theta(e_{i+1,i+2}); supports[i] lists the
// diagonal indices of theta(e_{i+1}). Returns U = sum theta(e_i) u_i with
// u_1 = I and u_{i+1} = w_i^* d_i^* u_i w_i, so that U^* theta(e_{i,i+1}) U = w_i.
DiagonalUnitary straighten_level(const std::vector<NormalizerSplit>& images,
                                 const std::vector<std::vector<std::size_t>>& supports);

}  // namespace tuhf

#include "tuhf/matrix.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "tuhf/kernels.hpp"

namespace tuhf {

ComplexMatrix ComplexMatrix::identity(std::size_t k) {
  ComplexMatrix m(k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(k_);
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

bool ComplexMatrix::is_upper_triangular() const {
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      if ((*this)(r, c) != Complex{}) return false;
    }
  }
  return true;
}

ComplexMatrix ComplexMatrix::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::optional<std::size_t> k;
  ComplexMatrix m;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!k) {
      std::size_t dim = 0;
      if (first != "dim" || !(ls >> dim) || dim == 0) {
        throw Error(ErrorCode::ParseError, "matrix file must start with 'dim <k>'");
      }
      k = dim;
      m = ComplexMatrix(dim);
      continue;
    }
    if (row >= *k) throw Error(ErrorCode::ParseError, "more than " + std::to_string(*k) + " matrix rows");
    std::size_t col = 0;
    std::string token = first;
    do {
      if (col >= *k) {
        throw Error(ErrorCode::ParseError, "row " + std::to_string(row + 1) + " has too many entries");
      }
      auto comma = token.find(',');
      if (comma == std::string::npos) {
        throw Error(ErrorCode::ParseError, "entry '" + token + "' is not a re,im pair");
      }
      try {
        std::size_t used_re = 0, used_im = 0;
        const std::string re_text = token.substr(0, comma);
        const std::string im_text = token.substr(comma + 1);
        double re = std::stod(re_text, &used_re);
        double im = std::stod(im_text, &used_im);
        if (used_re != re_text.size() || used_im != im_text.size()) throw std::invalid_argument("trailing");
        m(row, col) = Complex{re, im};
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "entry '" + token + "' is not a re,im pair");
      }
      ++col;
    } while (ls >> token);
    if (col != *k) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(row + 1) + " has " +
                                             std::to_string(col) + " entries, expected " +
                                             std::to_string(*k));
    }
    ++row;
  }
  if (!k || row != *k) throw Error(ErrorCode::ParseError, "matrix file is incomplete");
  return m;
}

std::string ComplexMatrix::to_string() const {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "dim " << k_ << '\n';
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) {
      if (c > 0) os << ' ';
      os << (*this)(r, c).real() << ',' << (*this)(r, c).imag();
    }
    os << '\n';
  }
  return os.str();
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::ShapeMismatch, "matrix product of different sizes");
  const std::size_t k = a.dim();
  ComplexMatrix out(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t l = 0; l < k; ++l) {
      const Complex x = a(r, l);
      if (x == Complex{}) continue;
      for (std::size_t c = 0; c < k; ++c) out(r, c) += x * b(l, c);
    }
  }
  return out;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

UpperTriangular::UpperTriangular(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_upper_triangular()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix has nonzero entries below the diagonal");
  }
}

void UpperTriangular::set(std::size_t r, std::size_t c, Complex value) {
  if (r > c) throw Error(ErrorCode::LowerTriangularRequest, "entry below the diagonal");
  m_(r, c) = value;
}

void PartialPermutationMatrix::assign(std::size_t column, std::size_t row) {
  if (row > column) throw Error(ErrorCode::LowerTriangularRequest, "partial permutation below the diagonal");
  if (row_of_column_[column] || column_of(row)) {
    throw Error(ErrorCode::NotNormalizingPartialIsometry,
                "second entry in row " + std::to_string(row) + " or column " + std::to_string(column));
  }
  row_of_column_[column] = row;
}

std::optional<std::size_t> PartialPermutationMatrix::column_of(std::size_t row) const {
  for (std::size_t c = 0; c < row_of_column_.size(); ++c) {
    if (row_of_column_[c] == row) return c;
  }
  return std::nullopt;
}

ComplexMatrix PartialPermutationMatrix::to_dense() const {
  ComplexMatrix out(dim());
  for (std::size_t c = 0; c < dim(); ++c) {
    if (row_of_column_[c]) out(*row_of_column_[c], c) = 1.0;
  }
  return out;
}

namespace {

bool unimodular(Complex z) { return std::abs(std::abs(z) - 1.0) <= kUnimodularTolerance; }

}  // namespace

DiagonalUnitary::DiagonalUnitary(std::vector<Complex> phases) : phases_(std::move(phases)) {
  for (std::size_t i = 0; i < phases_.size(); ++i) {
    if (!unimodular(phases_[i])) {
      throw Error(ErrorCode::NonUnimodularPhase, "phase " + std::to_string(i) + " has modulus " +
                                                     std::to_string(std::abs(phases_[i])));
    }
  }
}

void DiagonalUnitary::set_phase(std::size_t i, Complex value) {
  if (!unimodular(value)) {
    throw Error(ErrorCode::NonUnimodularPhase, "phase " + std::to_string(i) + " has modulus " +
                                                   std::to_string(std::abs(value)));
  }
  phases_[i] = value;
}

ComplexMatrix DiagonalUnitary::to_dense() const {
  ComplexMatrix out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out(i, i) = phases_[i];
  return out;
}

UpperTriangular apply_to_matrix(const RegularEmbedding& e, const UpperTriangular& m) {
  if (m.dim() != e.k_from()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix is " + std::to_string(m.dim()) +
                                              "x" + std::to_string(m.dim()) +
                                              " but embedding starts at T_" +
                                              std::to_string(e.k_from()));
  }
  const std::size_t k = e.k_from();
  std::vector<Index> elements;
  elements.reserve(e.k_to());
  for (std::size_t i = 1; i <= k; ++i) {
    auto blk = e.diag().block(i);
    elements.insert(elements.end(), blk.begin(), blk.end());
  }
  ComplexMatrix out(e.k_to());
  kernels::parallel::apply_rank_pairing(m.matrix().data(), k, elements, e.multiplicity(),
                                        out.data(), e.k_to());
  return UpperTriangular(std::move(out));
}

NormalizerSplit normalizer_split(const UpperTriangular& v) {
  const std::size_t k = v.dim();
  NormalizerSplit out{DiagonalUnitary(k), PartialPermutationMatrix(k)};
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = r; c < k; ++c) {
      const Complex z = v(r, c);
      const double mod = std::abs(z);
      if (mod <= kUnimodularTolerance) continue;
      if (!unimodular(z)) {
        throw Error(ErrorCode::NotNormalizingPartialIsometry,
                    "entry (" + std::to_string(r) + ", " + std::to_string(c) + ") has modulus " +
                        std::to_string(mod));
      }
      if (out.w.row_of(c) || out.w.column_of(r)) {
        throw Error(ErrorCode::NotNormalizingPartialIsometry,
                    "second nonzero in row " + std::to_string(r) + " or column " + std::to_string(c));
      }
      out.w.assign(c, r);
      out.d.set_phase(r, z / mod);
    }
  }
  return out;
}

DiagonalUnitary straighten_level(const std::vector<NormalizerSplit>& images,
                                 const std::vector<std::vector<std::size_t>>& supports) {
  if (supports.empty() || images.size() + 1 != supports.size()) {
    throw Error(ErrorCode::ShapeMismatch, "need k_1 supports and k_1 - 1 images");
  }
  std::size_t K = images.empty() ? 0 : images.front().w.dim();
  if (images.empty()) {
    for (const auto& s : supports) {
      for (std::size_t x : s) K = std::max(K, x + 1);
    }
  }
  for (const auto& img : images) {
    if (img.w.dim() != K || img.d.dim() != K) {
      throw Error(ErrorCode::ShapeMismatch, "level images of different sizes");
    }
  }
  std::vector<int> owner(K, -1);
  for (std::size_t i = 0; i < supports.size(); ++i) {
    for (std::size_t x : supports[i]) {
      if (x >= K || owner[x] != -1) {
        throw Error(ErrorCode::ShapeMismatch, "supports are not disjoint diagonal projections");
      }
      owner[x] = static_cast<int>(i);
    }
  }
  // theta(e_{i,i+1}) maps the range of theta(e_{i+1}) onto that of theta(e_i)
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < K; ++c) {
      auto r = images[i].w.row_of(c);
      if (!r) continue;
      ++count;
      if (owner[c] != static_cast<int>(i + 1) || owner[*r] != static_cast<int>(i)) {
        throw Error(ErrorCode::ShapeMismatch,
                    "image " + std::to_string(i + 1) + " does not map support " +
                        std::to_string(i + 2) + " onto support " + std::to_string(i + 1));
      }
    }
    if (count != supports[i + 1].size() || count != supports[i].size()) {
      throw Error(ErrorCode::ShapeMismatch, "image " + std::to_string(i + 1) +
                                                " is not a partial isometry between the supports");
    }
  }

  std::vector<Complex> u(K, Complex{1.0, 0.0});  // u_1 = I
  DiagonalUnitary out(K);
  for (std::size_t x : supports[0]) out.set_phase(x, u[x]);
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::vector<Complex> next(K, Complex{});
    for (std::size_t c = 0; c < K; ++c) {
      if (auto r = images[i].w.row_of(c)) next[c] = std::conj(images[i].d.phase(*r)) * u[*r];
    }
    u = std::move(next);
    for (std::size_t x : supports[i + 1]) out.set_phase(x, u[x]);
  }
  return out;
}

}  // namespace tuhf

#include "qgft/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qgft {

namespace {

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

Eigen::Map<const ComplexVector> as_vector(const ComplexMatrix& m) {
  return {m.data(), m.size()};
}

}  // namespace

bool Tolerance::close(Complex x, Complex y) const {
  return std::abs(x - y) <= absolute + relative * std::max(std::abs(x), std::abs(y));
}

ComplexMatrix make_matrix(Index rows, Index cols, std::span<const Complex> entries) {
  if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != entries.size()) {
    throw DimensionMismatch("make_matrix: " + std::to_string(entries.size()) +
                            " entries for a " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " matrix");
  }
  ComplexMatrix m(rows, cols);
  std::copy(entries.begin(), entries.end(), m.data());
  require_finite(m, "make_matrix");
  return m;
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const Complex v = m(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw NonFiniteEntry(std::string(what) + ": non-finite entry at (" + std::to_string(i) +
                             "," + std::to_string(j) + ")");
      }
    }
  }
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: " + shape(a) + " vs " + shape(b));
  }
  return max_abs(a - b);
}

bool all_close(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (!tol.close(a(i, j), b(i, j))) return false;
    }
  }
  return true;
}

Index leg_dimension(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("expected a square operator, got " + shape(m));
  const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  if (n * n != m.rows()) {
    throw DimensionMismatch("operator of size " + shape(m) + " is not on H⊗H");
  }
  return n;
}

// ---------------------------------------------------------------------------
// Functional

Functional::Functional(ComplexMatrix density) : density_(std::move(density)) {
  if (density_.rows() != density_.cols()) {
    throw DimensionMismatch("functional density must be square, got " + shape(density_));
  }
}

Functional Functional::matrix_unit(Index n, Index row, Index col) {
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  d(col, row) = 1.0;
  return Functional(std::move(d));
}

Functional Functional::vector(const ComplexVector& bra, const ComplexVector& ket) {
  if (bra.size() != ket.size()) throw DimensionMismatch("vector functional: bra/ket length");
  return Functional(ket * bra.adjoint());
}

Functional Functional::trace(Index n) { return Functional(identity(n)); }

Complex Functional::operator()(const ComplexMatrix& x) const {
  if (x.rows() != dimension() || x.cols() != dimension()) {
    throw DimensionMismatch("functional on " + std::to_string(dimension()) +
                            "-dim space applied to " + shape(x));
  }
  return density_.cwiseProduct(x.transpose()).sum();
}

Functional Functional::bar() const { return Functional(density_.adjoint()); }

Functional Functional::operator+(const Functional& other) const {
  return Functional(density_ + other.density_);
}

Functional Functional::operator*(Complex s) const { return Functional(density_ * s); }

// ---------------------------------------------------------------------------
// Tensor-leg kernels

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index rb = b.rows();
  const Index cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix flip(Index n) {
  if (n < 1) throw DimensionMismatch("flip: n must be positive");
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) s(k * n + i, i * n + k) = 1.0;
  }
  return s;
}

ComplexMatrix leg_embed(const ComplexMatrix& x, Legs placement, Index n) {
  if (x.rows() != n * n || x.cols() != n * n) {
    throw DimensionMismatch("leg_embed: expected " + std::to_string(n * n) + " square, got " +
                            shape(x));
  }
  switch (placement) {
    case Legs::k12:
      return kron(x, identity(n));
    case Legs::k23:
      return kron(identity(n), x);
    case Legs::k13: {
      const ComplexMatrix swap23 = kron(identity(n), flip(n));
      return swap23 * kron(x, identity(n)) * swap23;
    }
  }
  throw Error("leg_embed: unknown placement");
}

ComplexMatrix slice_left(const Functional& omega, const ComplexMatrix& x) {
  const Index n = leg_dimension(x);
  if (omega.dimension() != n) throw DimensionMismatch("slice_left: functional dimension");
  const ComplexMatrix& rho = omega.density();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Complex w = rho(j, i);
      if (w == Complex{}) continue;
      out.noalias() += w * x.block(i * n, j * n, n, n);
    }
  }
  return out;
}

ComplexMatrix slice_right(const Functional& theta, const ComplexMatrix& x) {
  const Index n = leg_dimension(x);
  if (theta.dimension() != n) throw DimensionMismatch("slice_right: functional dimension");
  const ComplexMatrix rho_t = theta.density().transpose();
  ComplexMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out(i, j) = x.block(i * n, j * n, n, n).cwiseProduct(rho_t).sum();
    }
  }
  return out;
}

ComplexMatrix contract_left(const ComplexVector& bra, const ComplexVector& ket,
                            const ComplexMatrix& x) {
  const Index n = leg_dimension(x);
  if (bra.size() != n || ket.size() != n) throw DimensionMismatch("contract_left: vector length");
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Complex bi = std::conj(bra(i));
    if (bi == Complex{}) continue;
    for (Index j = 0; j < n; ++j) {
      const Complex w = bi * ket(j);
      if (w == Complex{}) continue;
      out.noalias() += w * x.block(i * n, j * n, n, n);
    }
  }
  return out;
}

ComplexMatrix contract_right(const ComplexVector& bra, const ComplexVector& ket,
                             const ComplexMatrix& x) {
  const Index n = leg_dimension(x);
  if (bra.size() != n || ket.size() != n) throw DimensionMismatch("contract_right: vector length");
  ComplexMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out(i, j) = bra.dot(x.block(i * n, j * n, n, n) * ket);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SpanBasis

SpanBasis SpanBasis::orthogonal(Index rows, Index cols, std::vector<ComplexMatrix> elements) {
  SpanBasis b(rows, cols);
  b.norms2_.resize(static_cast<Index>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    b.check_shape(elements[i]);
    const double nn = elements[i].squaredNorm();
    if (nn == 0.0) throw Error("SpanBasis: zero element " + std::to_string(i));
    b.norms2_(static_cast<Index>(i)) = nn;
  }
  b.elements_ = std::move(elements);
  return b;
}

void SpanBasis::check_shape(const ComplexMatrix& x) const {
  if (x.rows() != rows_ || x.cols() != cols_) {
    throw DimensionMismatch("SpanBasis of " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " matrices given " + shape(x));
  }
}

ComplexVector SpanBasis::coordinates(const ComplexMatrix& x) const {
  check_shape(x);
  ComplexVector c(size());
  for (Index i = 0; i < size(); ++i) {
    c(i) = as_vector(element(i)).dot(as_vector(x)) / norms2_(i);
  }
  return c;
}

ComplexMatrix SpanBasis::combine(const ComplexVector& coords) const {
  if (coords.size() != size()) throw DimensionMismatch("SpanBasis::combine: coordinate count");
  ComplexMatrix out = ComplexMatrix::Zero(rows_, cols_);
  for (Index i = 0; i < size(); ++i) {
    if (coords(i) != Complex{}) out.noalias() += coords(i) * element(i);
  }
  return out;
}

double SpanBasis::residual(const ComplexMatrix& x) const { return max_abs(x - project(x)); }

SpanBasis span_basis(std::span<const ComplexMatrix> mats, const Tolerance& tol) {
  if (mats.empty()) return {};
  const Index rows = mats.front().rows();
  const Index cols = mats.front().cols();
  Eigen::MatrixXcd stacked(rows * cols, static_cast<Index>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].rows() != rows || mats[k].cols() != cols) {
      throw DimensionMismatch("span_basis: matrix " + std::to_string(k) + " has shape " +
                              shape(mats[k]));
    }
    stacked.col(static_cast<Index>(k)) = as_vector(mats[k]);
  }
  // Slice families repeat the same few matrices many times over. A pivoted QR
  // keeps the numerically independent columns, and the one-sided Jacobi SVD on
  // those stays accurate when the retained singular values coincide.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(stacked);
  qr.setThreshold(1e-14);
  const Index keep = qr.rank();
  if (keep == 0) return SpanBasis::orthogonal(rows, cols, {});
  Eigen::MatrixXcd selected(stacked.rows(), keep);
  for (Index j = 0; j < keep; ++j) selected.col(j) = stacked.col(qr.colsPermutation().indices()(j));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(selected, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  std::vector<ComplexMatrix> elements;
  if (sigma.size() > 0 && sigma(0) > 0.0) {
    const double cutoff = std::max(tol.absolute, kRankCutoff * sigma(0));
    for (Index r = 0; r < sigma.size() && sigma(r) > cutoff; ++r) {
      ComplexMatrix e(rows, cols);
      Eigen::Map<ComplexVector>(e.data(), e.size()) = svd.matrixU().col(r);
      elements.push_back(std::move(e));
    }
  }
  return SpanBasis::orthogonal(rows, cols, std::move(elements));
}

namespace {

double worst_relative_residual(const SpanBasis& from, const SpanBasis& onto) {
  double worst = 0.0;
  for (Index i = 0; i < from.size(); ++i) {
    const ComplexMatrix& q = from.element(i);
    const double r = onto.empty() ? 1.0 : (q - onto.project(q)).norm() / q.norm();
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace

SubspaceComparison subspace_equal(const SpanBasis& a, const SpanBasis& b, const Tolerance& tol) {
  if (a.rows() * a.cols() != b.rows() * b.cols() && !a.empty() && !b.empty()) {
    throw DimensionMismatch("subspace_equal: ambient dimensions differ");
  }
  SubspaceComparison out;
  out.forward = worst_relative_residual(a, b);
  out.backward = worst_relative_residual(b, a);
  out.deviation = std::max(out.forward, out.backward);
  const bool a_in_b = tol.admits(out.forward, 1.0);
  const bool b_in_a = tol.admits(out.backward, 1.0);
  out.equal = a_in_b && b_in_a;
  if (out.equal) {
    out.relation = SpanRelation::equal;
  } else if (a_in_b) {
    out.relation = SpanRelation::first_in_second;
  } else if (b_in_a) {
    out.relation = SpanRelation::second_in_first;
  } else {
    out.relation = SpanRelation::incomparable;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expansion in a product basis

namespace {

// Realignment R(Z)[(i,j),(k,l)] = Z[(i,k),(j,l)], which sends A⊗B to vec(A) vec(B)ᵀ.
Eigen::MatrixXcd realign(const ComplexMatrix& z, Index n) {
  Eigen::MatrixXcd out(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      for (Index j = 0; j < n; ++j) {
        for (Index l = 0; l < n; ++l) out(i * n + j, k * n + l) = z(i * n + k, j * n + l);
      }
    }
  }
  return out;
}

ComplexMatrix unrealign(const Eigen::MatrixXcd& r, Index n) {
  ComplexMatrix out(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      for (Index j = 0; j < n; ++j) {
        for (Index l = 0; l < n; ++l) out(i * n + k, j * n + l) = r(i * n + j, k * n + l);
      }
    }
  }
  return out;
}

// Columns vec(B_a) of a basis.
Eigen::MatrixXcd stacked_basis(const SpanBasis& b) {
  Eigen::MatrixXcd out(b.rows() * b.cols(), b.size());
  for (Index a = 0; a < b.size(); ++a) out.col(a) = as_vector(b.element(a));
  return out;
}

Eigen::VectorXd inverse_norms(const SpanBasis& b) {
  Eigen::VectorXd out(b.size());
  for (Index a = 0; a < b.size(); ++a) out(a) = 1.0 / b.norm2(a);
  return out;
}

void require_square_legs(const SpanBasis& left, const SpanBasis& right, Index n, const char* what) {
  if (left.rows() != n || left.cols() != n || right.rows() != n || right.cols() != n) {
    throw DimensionMismatch(std::string(what) + ": basis elements do not act on the legs");
  }
}

}  // namespace

TensorExpansion expand(const ComplexMatrix& z, const SpanBasis& left, const SpanBasis& right) {
  const Index n = leg_dimension(z);
  require_square_legs(left, right, n, "expand");
  const Eigen::MatrixXcd r = realign(z, n);
  const Eigen::MatrixXcd l = stacked_basis(left);
  const Eigen::MatrixXcd q = stacked_basis(right);
  TensorExpansion out;
  out.coefficients = inverse_norms(left).asDiagonal() * (l.adjoint() * r * q.conjugate()) *
                     inverse_norms(right).asDiagonal();
  const Eigen::MatrixXcd rebuilt = l * out.coefficients * q.transpose();
  out.residual = (r - rebuilt).cwiseAbs().maxCoeff();
  return out;
}

ComplexMatrix assemble(const Eigen::MatrixXcd& coefficients, const SpanBasis& left,
                       const SpanBasis& right) {
  if (coefficients.rows() != left.size() || coefficients.cols() != right.size()) {
    throw DimensionMismatch("assemble: coefficient matrix shape");
  }
  const Index n = left.rows();
  require_square_legs(left, right, n, "assemble");
  return unrealign(stacked_basis(left) * coefficients * stacked_basis(right).transpose(), n);
}

}  // namespace qgft

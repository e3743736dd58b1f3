#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qgft {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense complex operator. Row-major; on H⊗H the pair (i,k) maps to i*n+k.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteEntry : public Error {
 public:
  using Error::Error;
};

/// Mixed absolute/relative comparison: |x-y| <= absolute + relative*max(|x|,|y|).
struct Tolerance {
  double absolute = 1e-10;
  double relative = 1e-10;

  bool close(Complex x, Complex y) const;
  /// True when a deviation measured against magnitude `scale` is acceptable.
  bool admits(double deviation, double scale = 0.0) const {
    return deviation <= absolute + relative * scale;
  }
};

inline constexpr double kRankCutoff = 1e-8;

/// Builds a rows x cols matrix from row-major entries; rejects NaN/Inf.
ComplexMatrix make_matrix(Index rows, Index cols, std::span<const Complex> entries);
void require_finite(const ComplexMatrix& m, std::string_view what);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool all_close(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol);

/// n such that m is n^2 x n^2; throws otherwise.
Index leg_dimension(const ComplexMatrix& m);

/// Normal functional ω(x) = trace(density * x).
class Functional {
 public:
  explicit Functional(ComplexMatrix density);

  /// ω(x) = x(row, col).
  static Functional matrix_unit(Index n, Index row, Index col);
  /// ω(x) = <x ket, bra> = bra^* x ket.
  static Functional vector(const ComplexVector& bra, const ComplexVector& ket);
  static Functional trace(Index n);

  Index dimension() const { return density_.rows(); }
  const ComplexMatrix& density() const { return density_; }
  Complex operator()(const ComplexMatrix& x) const;

  /// ω̄(x) = conj(ω(x*)).
  Functional bar() const;

  Functional operator+(const Functional& other) const;
  Functional operator*(Complex s) const;

 private:
  ComplexMatrix density_;
};

ComplexMatrix identity(Index n);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// The flip Σ(u⊗v) = v⊗u on H⊗H, dim H = n.
ComplexMatrix flip(Index n);

enum class Legs { k12, k13, k23 };

/// Places an operator on H⊗H onto two legs of H⊗H⊗H.
ComplexMatrix leg_embed(const ComplexMatrix& x, Legs placement, Index n);

/// (ω⊗id)(X): slices leg 1, returns an operator on leg 2.
ComplexMatrix slice_left(const Functional& omega, const ComplexMatrix& x);
/// (id⊗θ)(X): slices leg 2, returns an operator on leg 1.
ComplexMatrix slice_right(const Functional& theta, const ComplexMatrix& x);

/// slice_left for the vector functional y ↦ bra^* y ket, in O(n^4).
ComplexMatrix contract_left(const ComplexVector& bra, const ComplexVector& ket,
                            const ComplexMatrix& x);
ComplexMatrix contract_right(const ComplexVector& bra, const ComplexVector& ket,
                             const ComplexMatrix& x);

/// Orthogonal basis of a matrix subspace under <X,Y> = trace(Y^* X).
///
/// Elements need not be normalized; coordinates divide by the squared norm,
/// which lets integer-valued bases (diagonal units, permutation matrices)
/// reproduce integer data without rounding.
class SpanBasis {
 public:
  SpanBasis() = default;
  SpanBasis(Index rows, Index cols) : rows_(rows), cols_(cols) {}

  /// Takes ownership of mutually orthogonal, nonzero elements.
  static SpanBasis orthogonal(Index rows, Index cols, std::vector<ComplexMatrix> elements);

  Index size() const { return static_cast<Index>(elements_.size()); }
  bool empty() const { return elements_.empty(); }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const ComplexMatrix& element(Index i) const { return elements_[static_cast<std::size_t>(i)]; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  double norm2(Index i) const { return norms2_[i]; }

  ComplexVector coordinates(const ComplexMatrix& x) const;
  ComplexMatrix combine(const ComplexVector& coords) const;
  ComplexMatrix project(const ComplexMatrix& x) const { return combine(coordinates(x)); }
  /// Max entry of x - P(x).
  double residual(const ComplexMatrix& x) const;

 private:
  void check_shape(const ComplexMatrix& x) const;

  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<ComplexMatrix> elements_;
  Eigen::VectorXd norms2_;
};

/// Orthonormal basis of span(mats); rank from the singular values, cutoff
/// max(tol.absolute, kRankCutoff * largest).
SpanBasis span_basis(std::span<const ComplexMatrix> mats, const Tolerance& tol = {});

enum class SpanRelation { equal, first_in_second, second_in_first, incomparable };

struct SubspaceComparison {
  bool equal = false;
  /// max(forward, backward)
  double deviation = 0.0;
  /// worst relative residual of the first basis projected onto the second
  double forward = 0.0;
  double backward = 0.0;
  SpanRelation relation = SpanRelation::incomparable;
};

SubspaceComparison subspace_equal(const SpanBasis& a, const SpanBasis& b, const Tolerance& tol = {});

/// Coefficients of Z ≈ Σ c_ij L_i ⊗ R_j and the max-entry residual.
struct TensorExpansion {
  Eigen::MatrixXcd coefficients;
  double residual = 0.0;
};

TensorExpansion expand(const ComplexMatrix& z, const SpanBasis& left, const SpanBasis& right);
ComplexMatrix assemble(const Eigen::MatrixXcd& coefficients, const SpanBasis& left,
                       const SpanBasis& right);

}  // namespace qgft

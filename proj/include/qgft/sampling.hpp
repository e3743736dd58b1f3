#pragma once

#include <cstdint>
#include <random>

#include "qgft/linalg.hpp"

namespace qgft {

/// Seeded source of random complex data for sampled checks.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Complex complex() {
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    return {re, im};
  }

  ComplexVector vector(Index n) {
    ComplexVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = complex();
    return v;
  }

  ComplexMatrix matrix(Index rows, Index cols) {
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) m(i, j) = complex();
    }
    return m;
  }

  /// Functional with a Gaussian density scaled by 1/n.
  Functional functional(Index n) {
    return Functional(matrix(n, n) / static_cast<double>(std::max<Index>(n, 1)));
  }

  /// Random combination of a basis with unit-variance entries in the result.
  ComplexMatrix element(const SpanBasis& basis) {
    ComplexVector c(basis.size());
    for (Index i = 0; i < basis.size(); ++i) c(i) = complex() / std::sqrt(basis.norm2(i));
    return basis.combine(c);
  }

  /// Haar-distributed unitary via QR with the phases of R divided out.
  ComplexMatrix unitary(Index n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Eigen::MatrixXcd(matrix(n, n)));
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
      const Complex d = r(j, j);
      if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

}  // namespace qgft

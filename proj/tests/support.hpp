#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qgft/group.hpp"
#include "qgft/linalg.hpp"

namespace qgft::testing {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng) {
  std::normal_distribution<double> nd;
  const double re = nd(rng);
  return {re, nd(rng)};
}

inline ComplexMatrix random_matrix(Rng& rng, Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = random_complex(rng);
  }
  return m;
}

inline ComplexVector random_vector(Rng& rng, Index n) {
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = random_complex(rng);
  return v;
}

inline ComplexMatrix random_unitary(Rng& rng, Index n) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Eigen::MatrixXcd(random_matrix(rng, n, n)));
  return Eigen::MatrixXcd(qr.householderQ());
}

/// Dense W of a group from its table: W[(s, st), (s, t)] = 1.
inline ComplexMatrix dense_group_w(const FiniteGroup& g) {
  const auto n = static_cast<Index>(g.order());
  ComplexMatrix w = ComplexMatrix::Zero(n * n, n * n);
  for (Index s = 0; s < n; ++s) {
    for (Index t = 0; t < n; ++t) {
      const auto st = static_cast<Index>(g.mult(static_cast<std::size_t>(s), static_cast<std::size_t>(t)));
      w(s * n + st, s * n + t) = 1.0;
    }
  }
  return w;
}

/// (V⊗V) W (V⊗V)*: still multiplicative, no longer a permutation.
inline ComplexMatrix conjugated(const ComplexMatrix& w, const ComplexMatrix& v) {
  ComplexMatrix vv(v.rows() * v.rows(), v.cols() * v.cols());
  for (Index i = 0; i < v.rows(); ++i) {
    for (Index j = 0; j < v.cols(); ++j) vv.block(i * v.rows(), j * v.cols(), v.rows(), v.cols()) = v(i, j) * v;
  }
  return vv * w * vv.adjoint();
}

/// Operator on three legs from a matrix-valued entry rule, brute force.
/// Leg embedding oracle: X acting on legs (p, q) of H⊗H⊗H, identity on the third.
inline ComplexMatrix embed_oracle(const ComplexMatrix& x, int p, int q, Index n) {
  const Index d = n * n * n;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Index r = 0; r < d; ++r) {
    const Index rl[3] = {r / (n * n), (r / n) % n, r % n};
    for (Index c = 0; c < d; ++c) {
      const Index cl[3] = {c / (n * n), (c / n) % n, c % n};
      const int other = 3 - p - q;
      if (rl[other] != cl[other]) continue;
      out(r, c) = x(rl[p] * n + rl[q], cl[p] * n + cl[q]);
    }
  }
  return out;
}

/// max |W12 W13 W23 - W23 W12| with all three legs materialized.
inline double pentagon_oracle(const ComplexMatrix& w, Index n) {
  const ComplexMatrix w12 = embed_oracle(w, 0, 1, n);
  const ComplexMatrix w13 = embed_oracle(w, 0, 2, n);
  const ComplexMatrix w23 = embed_oracle(w, 1, 2, n);
  return (w12 * w13 * w23 - w23 * w12).cwiseAbs().maxCoeff();
}

}  // namespace qgft::testing

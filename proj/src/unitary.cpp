#include "qgft/unitary.hpp"

#include <algorithm>
#include <string>

namespace qgft {

MultiplicativeUnitary::MultiplicativeUnitary(Index n, ComplexMatrix w,
                                             std::optional<std::vector<Index>> image)
    : n_(n), w_(std::move(w)), w_adj_(w_.adjoint()), image_(std::move(image)) {}

MultiplicativeUnitary MultiplicativeUnitary::dense(ComplexMatrix w) {
  const Index n = leg_dimension(w);
  require_finite(w, "multiplicative unitary");
  auto image = as_permutation(w);
  return MultiplicativeUnitary(n, std::move(w), std::move(image));
}

MultiplicativeUnitary MultiplicativeUnitary::permutation(Index n, std::vector<Index> image) {
  const Index d = n * n;
  if (static_cast<Index>(image.size()) != d) {
    throw DimensionMismatch("permutation unitary: expected " + std::to_string(d) + " images");
  }
  std::vector<bool> hit(static_cast<std::size_t>(d), false);
  for (Index p : image) {
    if (p < 0 || p >= d || hit[static_cast<std::size_t>(p)]) {
      throw Error("permutation unitary: image is not a permutation of 0.." + std::to_string(d - 1));
    }
    hit[static_cast<std::size_t>(p)] = true;
  }
  ComplexMatrix w = ComplexMatrix::Zero(d, d);
  for (Index p = 0; p < d; ++p) w(image[static_cast<std::size_t>(p)], p) = 1.0;
  return MultiplicativeUnitary(n, std::move(w), std::move(image));
}

MultiplicativeUnitary MultiplicativeUnitary::dual() const {
  // (ΣW*Σ)(p, q) = conj(W(swap q, swap p)) with swap(i*n + k) = k*n + i.
  const Index d = n_ * n_;
  const auto swap = [n = n_](Index p) { return (p % n) * n + p / n; };
  ComplexMatrix w_hat(d, d);
  for (Index p = 0; p < d; ++p) {
    for (Index q = 0; q < d; ++q) w_hat(p, q) = std::conj(w_(swap(q), swap(p)));
  }
  if (!image_) return MultiplicativeUnitary(n_, std::move(w_hat), std::nullopt);
  std::vector<Index> inverse(static_cast<std::size_t>(d));
  for (Index p = 0; p < d; ++p) inverse[static_cast<std::size_t>((*image_)[static_cast<std::size_t>(p)])] = p;
  std::vector<Index> image(static_cast<std::size_t>(d));
  for (Index p = 0; p < d; ++p) {
    image[static_cast<std::size_t>(p)] = swap(inverse[static_cast<std::size_t>(swap(p))]);
  }
  return MultiplicativeUnitary(n_, std::move(w_hat), std::move(image));
}

ComplexMatrix MultiplicativeUnitary::conjugate_leg2(const ComplexMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) throw DimensionMismatch("comultiply: element is not on H");
  const Index d = n_ * n_;
  if (image_) {
    // (W* A W)(p, q) = A(π(p), π(q)) for A = 1⊗x.
    const auto& pi = *image_;
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (Index p = 0; p < d; ++p) {
      const Index ip = pi[static_cast<std::size_t>(p)];
      for (Index q = 0; q < d; ++q) {
        const Index iq = pi[static_cast<std::size_t>(q)];
        if (ip / n_ == iq / n_) out(p, q) = x(ip % n_, iq % n_);
      }
    }
    return out;
  }
  ComplexMatrix right(d, d);
  for (Index i = 0; i < n_; ++i) {
    right.middleRows(i * n_, n_).noalias() = x * w_.middleRows(i * n_, n_);
  }
  return w_adj_ * right;
}

ComplexMatrix MultiplicativeUnitary::conjugate(const ComplexMatrix& z) const {
  const Index d = n_ * n_;
  if (z.rows() != d || z.cols() != d) throw DimensionMismatch("conjugate: operator is not on H⊗H");
  if (!image_) return w_ * z * w_adj_;
  // (W z W*)(π(p), π(q)) = z(p, q).
  const auto& pi = *image_;
  ComplexMatrix out(d, d);
  for (Index p = 0; p < d; ++p) {
    for (Index q = 0; q < d; ++q) {
      out(pi[static_cast<std::size_t>(p)], pi[static_cast<std::size_t>(q)]) = z(p, q);
    }
  }
  return out;
}

ComplexMatrix MultiplicativeUnitary::adjoint_conjugate(const ComplexMatrix& z) const {
  const Index d = n_ * n_;
  if (z.rows() != d || z.cols() != d) throw DimensionMismatch("conjugate: operator is not on H⊗H");
  if (!image_) return w_adj_ * z * w_;
  const auto& pi = *image_;
  ComplexMatrix out(d, d);
  for (Index p = 0; p < d; ++p) {
    for (Index q = 0; q < d; ++q) {
      out(p, q) = z(pi[static_cast<std::size_t>(p)], pi[static_cast<std::size_t>(q)]);
    }
  }
  return out;
}

std::optional<std::vector<Index>> as_permutation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Index d = m.rows();
  std::vector<Index> image(static_cast<std::size_t>(d), -1);
  std::vector<bool> hit(static_cast<std::size_t>(d), false);
  for (Index r = 0; r < d; ++r) {
    for (Index c = 0; c < d; ++c) {
      const Complex v = m(r, c);
      if (v == Complex{}) continue;
      if (v != Complex{1.0, 0.0} || image[static_cast<std::size_t>(c)] != -1 ||
          hit[static_cast<std::size_t>(r)]) {
        return std::nullopt;
      }
      image[static_cast<std::size_t>(c)] = r;
      hit[static_cast<std::size_t>(r)] = true;
    }
  }
  if (std::find(image.begin(), image.end(), Index{-1}) != image.end()) return std::nullopt;
  return image;
}

double unitarity_deviation(const MultiplicativeUnitary& mu) {
  // A validated index map is a permutation matrix, unitary without rounding.
  if (mu.permutation()) return 0.0;
  const ComplexMatrix& w = mu.matrix();
  const ComplexMatrix id = identity(w.rows());
  return std::max(max_abs(mu.adjoint() * w - id), max_abs(w * mu.adjoint() - id));
}

namespace {

// W12 W13 W23 and W23 W12 on basis triples; both sides are permutations.
PentagonReport pentagon_permutation(Index n, const std::vector<Index>& pi) {
  const auto apply = [&](Index x, Index y) {
    const Index p = pi[static_cast<std::size_t>(x * n + y)];
    return std::pair{p / n, p % n};
  };
  Index mismatches = 0;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        // Left side acts right-to-left: W23, then W13, then W12.
        auto [b1, c1] = apply(b, c);
        auto [a1, c2] = apply(a, c1);
        auto [a2, b2] = apply(a1, b1);
        // Right side: W12, then W23.
        auto [a3, b3] = apply(a, b);
        auto [b4, c4] = apply(b3, c);
        if (a2 != a3 || b2 != b4 || c2 != c4) ++mismatches;
      }
    }
  }
  PentagonReport r;
  r.exact = true;
  r.max_deviation = mismatches == 0 ? 0.0 : 1.0;
  r.pass = mismatches == 0;
  return r;
}

// Block (i,j) over leg 1 of W12 W13 W23 is Σ_k (W_ik ⊗ 1)(1 ⊗ W_kj) W and of W23 W12
// is W (W_ij ⊗ 1), where W_ij is the (i,j) block of W. Row-major storage lets the
// leg reshapes below be plain Maps, so each j costs one (n² x n²)(n² x n³) product.
PentagonReport pentagon_dense(const ComplexMatrix& w, Index n) {
  using Map = Eigen::Map<ComplexMatrix>;
  using ConstMap = Eigen::Map<const ComplexMatrix>;
  const Index d = n * n;
  const auto block = [&](Index i, Index j) { return w.block(i * n, j * n, n, n); };

  // wp(ρ, c·n + b) = w(ρ, b·n + c), read as rows (ρ, c) and columns b.
  ComplexMatrix wp(d, d);
  for (Index b = 0; b < n; ++b)
    for (Index c = 0; c < n; ++c) wp.col(c * n + b) = w.col(b * n + c);
  const ConstMap wp_rows(wp.data(), d * n, n);

  ComplexMatrix stacked(d, n * d);  // rows (k, b'), columns (c, col)
  ComplexMatrix lhs(d, n * d);      // rows (i, b), columns (c, col)
  ComplexMatrix rhs(d * n, n);      // rows (ρ, c'), columns b'
  double worst = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      const ComplexMatrix wkj = block(k, j);
      Map p(stacked.data() + k * d * d, d, d);  // (1 ⊗ W_kj) W
      for (Index b = 0; b < n; ++b) p.middleRows(b * n, n).noalias() = wkj * w.middleRows(b * n, n);
    }
    lhs.noalias() = w * stacked;
    for (Index i = 0; i < n; ++i) {
      const ConstMap lij(lhs.data() + i * d * d, d, d);
      rhs.noalias() = wp_rows * block(i, j);
      for (Index rho = 0; rho < d; ++rho)
        for (Index b = 0; b < n; ++b)
          for (Index c = 0; c < n; ++c)
            worst = std::max(worst, std::abs(lij(rho, b * n + c) - rhs(rho * n + c, b)));
    }
  }
  PentagonReport r;
  r.max_deviation = worst;
  return r;
}

}  // namespace

PentagonReport check_pentagon(const MultiplicativeUnitary& mu, const Tolerance& tol) {
  const Index n = mu.dimension();
  if (mu.permutation()) return pentagon_permutation(n, *mu.permutation());
  if (n > kDensePentagonLimit) {
    throw Error("dense pentagon check is limited to n <= " + std::to_string(kDensePentagonLimit));
  }
  PentagonReport r = pentagon_dense(mu.matrix(), n);
  r.pass = tol.admits(r.max_deviation, 1.0);
  return r;
}

}  // namespace qgft

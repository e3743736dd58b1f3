#pragma once

#include <optional>
#include <vector>

#include "qgft/linalg.hpp"

namespace qgft {

/// Unitary W on H⊗H, held densely and, when W permutes the product basis,
/// also as the index map W e_p = e_{image[p]} with p = i*n + k.
class MultiplicativeUnitary {
 public:
  static MultiplicativeUnitary dense(ComplexMatrix w);
  static MultiplicativeUnitary permutation(Index n, std::vector<Index> image);

  Index dimension() const { return n_; }
  const ComplexMatrix& matrix() const { return w_; }
  const ComplexMatrix& adjoint() const { return w_adj_; }
  const std::optional<std::vector<Index>>& permutation() const { return image_; }
  bool structured() const { return image_.has_value(); }

  /// ΣW*Σ, the unitary of the dual pair.
  MultiplicativeUnitary dual() const;

  /// U*(1⊗x)U with U = W; the comultiplication Δ.
  ComplexMatrix conjugate_leg2(const ComplexMatrix& x) const;

  /// W z W* and W* z W for z on H⊗H.
  ComplexMatrix conjugate(const ComplexMatrix& z) const;
  ComplexMatrix adjoint_conjugate(const ComplexMatrix& z) const;

 private:
  MultiplicativeUnitary(Index n, ComplexMatrix w, std::optional<std::vector<Index>> image);

  Index n_ = 0;
  ComplexMatrix w_;
  ComplexMatrix w_adj_;
  std::optional<std::vector<Index>> image_;
};

/// Largest n for which the dense pentagon is evaluated.
inline constexpr Index kDensePentagonLimit = 12;

struct PentagonReport {
  bool pass = false;
  /// Max entry of |W12 W13 W23 - W23 W12|.
  double max_deviation = 0.0;
  bool exact = false;
};

PentagonReport check_pentagon(const MultiplicativeUnitary& mu, const Tolerance& tol = {});

/// Max entry of |W*W - I| and |WW* - I|.
double unitarity_deviation(const MultiplicativeUnitary& mu);

/// Index map of a 0/1 permutation matrix, if m is one.
std::optional<std::vector<Index>> as_permutation(const ComplexMatrix& m);

}  // namespace qgft

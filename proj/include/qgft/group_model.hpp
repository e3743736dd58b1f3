#pragma once

#include "qgft/group.hpp"
#include "qgft/quantum_group.hpp"

namespace qgft {

/// A function G → ℂ in group-element index order.
using GroupFunction = ComplexVector;

/// The pair (L^∞(G), ℒ(G)) on H = ℓ²(G) with W e_s⊗e_t = e_s⊗e_{st}.
///
/// φ is the counting measure (ξ_φ all ones) and φ̂ the (e,e) entry
/// (ξ_φ̂ the basis vector at the identity). The modular function is 1.
class GroupModel {
 public:
  static GroupModel build(FiniteGroup group, const Tolerance& tol = {});

  const FiniteGroup& group() const { return group_; }
  const QuantumGroupPair& pair() const { return qg_; }
  std::size_t order() const { return group_.order(); }

  /// Multiplication operator (π_a ξ)(x) = a(x) ξ(x).
  ComplexMatrix pi(const GroupFunction& a) const;
  /// Left convolution L_b[x, y] = b(x y⁻¹).
  ComplexMatrix L(const GroupFunction& b) const;

  /// a with pi(a) = x; x must be diagonal within tolerance.
  GroupFunction from_pi(const ComplexMatrix& x) const;
  /// b with L(b) = y; read from the identity column, y must lie in ℒ(G).
  GroupFunction from_L(const ComplexMatrix& y) const;

  /// a*(x) = conj(a(x)).
  GroupFunction star(const GroupFunction& a) const;
  /// b*(x) = δ(x⁻¹) conj(b(x⁻¹)) with δ ≡ 1.
  GroupFunction dual_star(const GroupFunction& b) const;
  double modular(std::size_t) const { return 1.0; }

  /// (a∗c)(y) = Σ_x a(x) c(x⁻¹y).
  GroupFunction classical_convolution(const GroupFunction& a, const GroupFunction& c) const;

 private:
  GroupModel(FiniteGroup group, QuantumGroupPair qg)
      : group_(std::move(group)), qg_(std::move(qg)) {}
  void check_length(const GroupFunction& f) const;

  FiniteGroup group_;
  QuantumGroupPair qg_;
};

/// The W of a group as an index map: image[s*n + t] = s*n + st.
MultiplicativeUnitary group_unitary(const FiniteGroup& group);

struct DftComparison {
  /// Diagonal of Ū F(π_a) Uᵀ with U[j, x] = χ_j(x)/√n.
  ComplexVector diagonal;
  /// â(χ_j) = Σ_x a(x) conj(χ_j(x)).
  ComplexVector character_sums;
  double off_diagonal = 0.0;
  double deviation = 0.0;  // max of off_diagonal and |diagonal - character_sums|
  bool pass = false;
};

/// Throws GroupError(non_abelian_input) for non-abelian groups.
DftComparison dft_compare(const GroupModel& model, const GroupFunction& a, const Tolerance& tol = {});

}  // namespace qgft

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qgft/linalg.hpp"
#include "qgft/unitary.hpp"

namespace qgft {

class ClosureFailure : public Error {
 public:
  ClosureFailure(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class InconsistentSlices : public Error {
 public:
  InconsistentSlices(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class SingularAntipode : public Error {
 public:
  using Error::Error;
};

class WeightNotFound : public Error {
 public:
  using Error::Error;
};

/// Outcome of a numerical identity check.
struct CheckReport {
  bool pass = false;
  double deviation = 0.0;
  /// Effective threshold, absolute + relative * scale; pass ⇔ deviation ≤ tolerance.
  double tolerance = 0.0;
};

inline void settle(CheckReport& r, const Tolerance& tol, double scale) {
  r.tolerance = tol.absolute + tol.relative * scale;
  r.pass = r.deviation <= r.tolerance;
}

/// Vector state φ(x) = <x ξ, ξ> with GNS map Λ(x) = x ξ.
struct Weight {
  ComplexVector xi;

  Complex operator()(const ComplexMatrix& x) const { return xi.dot(x * xi); }
  ComplexVector gns(const ComplexMatrix& x) const { return x * xi; }
};

/// <u, v>, linear in u.
inline Complex inner(const ComplexVector& u, const ComplexVector& v) { return v.dot(u); }

/// Slice span of W together with its closure residuals.
struct GeneratedAlgebra {
  SpanBasis basis;
  double product_residual = 0.0;
  double adjoint_residual = 0.0;
};

/// span{(id⊗ω)(W)}: the algebra M. Throws ClosureFailure beyond tol unless
/// require_closure is false, in which case the residuals are only recorded.
GeneratedAlgebra generate_M(const MultiplicativeUnitary& mu, const Tolerance& tol = {},
                            bool require_closure = true);
/// span{(ω⊗id)(W)}: the dual algebra M̂.
GeneratedAlgebra generate_Mhat(const MultiplicativeUnitary& mu, const Tolerance& tol = {},
                               bool require_closure = true);

/// Worst product and adjoint residuals of a basis against its own span.
std::pair<double, double> closure_residuals(const SpanBasis& basis);

/// Δx = W*(1⊗x)W.
ComplexMatrix comultiply(const MultiplicativeUnitary& mu, const ComplexMatrix& x);
/// Δ̂y = ΣW(y⊗1)W*Σ.
ComplexMatrix dual_comultiply(const MultiplicativeUnitary& mu, const ComplexMatrix& y);

using Comultiplication = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Linear map on span(basis), as a matrix acting on basis coordinates.
struct AlgebraMap {
  Eigen::MatrixXcd matrix;
  /// Residual of the defining relations (max entry, operator scale).
  double residual = 0.0;

  ComplexMatrix apply(const SpanBasis& basis, const ComplexMatrix& x) const;
};

/// S with S((id⊗θ)(W)) = (id⊗θ)(W*) over all matrix units θ, by least squares.
/// Throws InconsistentSlices when the residual exceeds tol.
AlgebraMap antipode_from_slices(const MultiplicativeUnitary& mu, const SpanBasis& m_basis,
                                const Tolerance& tol = {});
/// Ŝ with Ŝ((ω⊗id)(W*)) = (ω⊗id)(W).
AlgebraMap antipode_hat_from_slices(const MultiplicativeUnitary& mu, const SpanBasis& mhat_basis,
                                    const Tolerance& tol = {});

/// Inverse map; throws SingularAntipode when the condition number exceeds 1/kRankCutoff.
AlgebraMap invert(const AlgebraMap& map, double* condition = nullptr);

/// ω♯(x) = conj(ω(S(x)*)) on span(basis), as a density supported on the span.
Functional sharp(const Functional& omega, const AlgebraMap& antipode, const SpanBasis& basis);

/// The assembled pair (M, M̂, W, φ, φ̂, S, Ŝ) on a common H. Immutable.
class QuantumGroupPair {
 public:
  /// Generates both algebras from W and finds the Haar vectors as the leg-wise
  /// fixed vectors of W, scaled so that |ξ_φ|^2 = n and the dual GNS relation holds.
  static QuantumGroupPair from_unitary(MultiplicativeUnitary mu, const Tolerance& tol = {});

  static QuantumGroupPair assemble(MultiplicativeUnitary mu, SpanBasis m_basis,
                                   SpanBasis mhat_basis, Weight phi, Weight phihat,
                                   const Tolerance& tol = {});

  /// The pair built on ΣW*Σ, with the roles of the two sides exchanged.
  QuantumGroupPair dual() const;

  Index dimension() const { return mu_.dimension(); }
  const MultiplicativeUnitary& unitary() const { return mu_; }
  const SpanBasis& algebra() const { return m_basis_; }
  const SpanBasis& dual_algebra() const { return mhat_basis_; }
  const Weight& haar() const { return phi_; }
  const Weight& dual_haar() const { return phihat_; }
  const AlgebraMap& antipode() const { return s_; }
  const AlgebraMap& dual_antipode() const { return shat_; }
  const AlgebraMap& antipode_inverse() const { return s_inv_; }
  const AlgebraMap& dual_antipode_inverse() const { return shat_inv_; }
  double antipode_condition() const { return s_condition_; }
  double dual_antipode_condition() const { return shat_condition_; }
  const Tolerance& tolerance() const { return tol_; }

  ComplexMatrix comultiply(const ComplexMatrix& x) const { return qgft::comultiply(mu_, x); }
  ComplexMatrix dual_comultiply(const ComplexMatrix& y) const { return mu_hat_.conjugate_leg2(y); }
  ComplexMatrix apply_antipode(const ComplexMatrix& x) const { return s_.apply(m_basis_, x); }
  ComplexMatrix apply_dual_antipode(const ComplexMatrix& y) const { return shat_.apply(mhat_basis_, y); }

  /// λ(ω) = (ω⊗id)(W) ∈ M̂.
  ComplexMatrix lambda(const Functional& omega) const;
  /// λ̂(θ) = (id⊗θ)(W*) ∈ M.
  ComplexMatrix lambda_hat(const Functional& theta) const;

 private:
  QuantumGroupPair() = default;

  MultiplicativeUnitary mu_ = MultiplicativeUnitary::permutation(1, {0});
  MultiplicativeUnitary mu_hat_ = MultiplicativeUnitary::permutation(1, {0});
  SpanBasis m_basis_;
  SpanBasis mhat_basis_;
  Weight phi_;
  Weight phihat_;
  AlgebraMap s_;
  AlgebraMap shat_;
  AlgebraMap s_inv_;
  AlgebraMap shat_inv_;
  double s_condition_ = 1.0;
  double shat_condition_ = 1.0;
  Tolerance tol_;
};

// ---------------------------------------------------------------------------
// Structural checks

/// Frobenius norm of (Δ⊗id)Δx - (id⊗Δ)Δx over the basis, via structure constants,
/// combined with the residual of Δ(basis) ⊂ span(basis)⊗span(basis).
CheckReport check_coassociativity(const SpanBasis& basis, const Comultiplication& comult,
                                  const Tolerance& tol = {});

/// φ((ω⊗id)Δx) = φ(x)ω(1) for all ω, tested as (id⊗φ)(Δx) = φ(x)1.
CheckReport check_left_invariance(const Weight& weight, const Comultiplication& comult,
                                  const SpanBasis& basis, const Tolerance& tol = {});
/// ψ((id⊗ω)Δx) = ψ(x)ω(1) for all ω, tested as (ψ⊗id)(Δx) = ψ(x)1.
CheckReport check_right_invariance(const std::function<Complex(const ComplexMatrix&)>& psi,
                                   const Comultiplication& comult, const SpanBasis& basis,
                                   const Tolerance& tol = {});

/// <Λ(x),Λ(y)> = φ(y*x) on basis pairs; fails if Λ is not injective on the span.
CheckReport check_gns(const Weight& weight, const SpanBasis& basis, const Tolerance& tol = {});

/// <Λ̂((ω⊗id)(W)), Λ(x)> = ω(x*) for the given ω and all basis x of M.
CheckReport check_phihat(const QuantumGroupPair& qg, std::span<const Functional> omegas,
                         const Tolerance& tol = {});
/// <Λ((id⊗ω)(W*)), Λ̂(y)> = ω(y*) for the given ω and all basis y of M̂.
CheckReport check_phihatdual(const QuantumGroupPair& qg, std::span<const Functional> omegas,
                             const Tolerance& tol = {});

struct AntipodeReport {
  CheckReport slices;           // defining relation residual, both sides
  CheckReport anti_multiplicative;
  CheckReport square;           // |S^2 - id| and |Ŝ^2 - id|
  CheckReport star;             // S(S(x)*)* = x
};

AntipodeReport check_antipodes(const QuantumGroupPair& qg, const Tolerance& tol = {});

struct SharpReport {
  CheckReport adjoint;    // ((ω⊗id)(W))* = (ω♯⊗id)(W)
  CheckReport involution; // (ω♯)♯ = ω on M
};

SharpReport check_sharp(const QuantumGroupPair& qg, std::span<const Functional> omegas,
                        const Tolerance& tol = {});

/// Products of slices: the three multiplicativity laws of W for pairs of functionals.
struct SliceProductReport {
  CheckReport leg1;      // λ(ω1)λ(ω2) = λ(μ), μ = (ω1⊗ω2)Δ
  CheckReport leg2;      // (id⊗θ1)(W)(id⊗θ2)(W) = (id⊗ν)(W), ν = (θ1⊗θ2)Δ̂^cop
  CheckReport leg2_adj;  // same for W*, ν' = (θ1⊗θ2)Δ̂
};

SliceProductReport check_slice_products(const QuantumGroupPair& qg,
                                        std::span<const std::pair<Functional, Functional>> pairs,
                                        const Tolerance& tol = {});

struct PontryaginReport {
  bool pass = false;
  double tolerance = 0.0;
  SubspaceComparison algebra;       // M̂ of ΣW*Σ against M
  SubspaceComparison dual_algebra;  // M of ΣW*Σ against M̂
  double deviation = 0.0;
};

PontryaginReport pontryagin_check(const MultiplicativeUnitary& mu, const SpanBasis& m_basis,
                                  const SpanBasis& mhat_basis, const Tolerance& tol = {});

/// W ∈ span(M)⊗span(M̂): max-entry residual.
double membership_residual(const QuantumGroupPair& qg);

}  // namespace qgft

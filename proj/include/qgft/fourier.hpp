#pragma once

#include <algorithm>
#include <span>

#include "qgft/quantum_group.hpp"

namespace qgft {

class NotInAlgebra : public Error {
 public:
  NotInAlgebra(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// F(a) = (φ⊗id)(W(a⊗1)) for a ∈ M.
ComplexMatrix fourier(const QuantumGroupPair& qg, const ComplexMatrix& a);
/// F⁻¹(b) = (id⊗φ̂)(W*(1⊗b)) for b ∈ M̂.
ComplexMatrix inverse_fourier(const QuantumGroupPair& qg, const ComplexMatrix& b);

/// A transform together with the GNS vectors of its input and output.
struct FourierReport {
  ComplexMatrix input;
  ComplexMatrix output;
  ComplexVector gns_input;
  ComplexVector gns_output;
  /// |Λ̂(F a) - Λ(a)| for the forward map, |Λ(F⁻¹ b) - Λ̂(b)| for the inverse.
  double deviation = 0.0;
};

FourierReport fourier_report(const QuantumGroupPair& qg, const ComplexMatrix& a);
FourierReport inverse_fourier_report(const QuantumGroupPair& qg, const ComplexMatrix& b);

struct InversionReport {
  bool pass = false;
  double forward = 0.0;   // max |F⁻¹(F a) - a|
  double backward = 0.0;  // max |F(F⁻¹ b) - b|
  double tolerance = 0.0;
  double deviation() const { return std::max(forward, backward); }
};

InversionReport check_inversion(const QuantumGroupPair& qg, std::span<const ComplexMatrix> m_samples,
                                std::span<const ComplexMatrix> mhat_samples,
                                const Tolerance& tol = {});

struct PlancherelValue {
  Complex lhs;  // φ̂(F(a)* F(a))
  Complex rhs;  // φ(a* a)
  double deviation = 0.0;
};

PlancherelValue plancherel(const QuantumGroupPair& qg, const ComplexMatrix& a);

/// a ∗ c = F⁻¹(F(a) F(c)).
ComplexMatrix convolve(const QuantumGroupPair& qg, const ComplexMatrix& a, const ComplexMatrix& c);
/// a ∗ c = (φ⊗id)([(S⁻¹⊗id)Δc](a⊗1)).
ComplexMatrix convolve_direct(const QuantumGroupPair& qg, const ComplexMatrix& a,
                              const ComplexMatrix& c);
/// b ∗ d = F(F⁻¹(b) F⁻¹(d)).
ComplexMatrix convolve_dual(const QuantumGroupPair& qg, const ComplexMatrix& b,
                            const ComplexMatrix& d);
/// b ∗ d = (φ̂⊗id)([(Ŝ⁻¹⊗id)Δ̂d](b⊗1)).
ComplexMatrix convolve_dual_direct(const QuantumGroupPair& qg, const ComplexMatrix& b,
                                   const ComplexMatrix& d);

/// ⟨b|a⟩ for a ∈ M, b ∈ M̂ through three independent routes.
struct PairingValue {
  Complex via_inverse;  // φ(a F⁻¹(b))
  Complex via_forward;  // φ̂(F(a*)* b)
  Complex via_unitary;  // (φ⊗φ̂)((a⊗1) W* (1⊗b))
  double spread = 0.0;

  Complex value() const { return via_inverse; }
};

PairingValue pairing(const QuantumGroupPair& qg, const ComplexMatrix& b, const ComplexMatrix& a);

/// Functionals driving one instance of the pairing laws: b_i = (ω_i⊗id)(W), a_i = (id⊗θ_i)(W).
struct PairingSample {
  Functional omega1;
  Functional omega2;
  Functional theta1;
  Functional theta2;
};

struct PairingAxiomsReport {
  CheckReport product;     // ⟨b1 b2|a⟩ = ⟨b1⊗b2|Δa⟩
  CheckReport coproduct;   // ⟨b|a1 a2⟩ = ⟨Δ̂^cop b|a1⊗a2⟩
  CheckReport antipode;    // ⟨b|S a⟩ = ⟨Ŝ⁻¹ b|a⟩, also through ω̄♯
  bool pass() const { return product.pass && coproduct.pass && antipode.pass; }
};

PairingAxiomsReport check_pairing_axioms(const QuantumGroupPair& qg,
                                         std::span<const PairingSample> samples,
                                         const Tolerance& tol = {});

/// ⟨b|a⟩ = <Λ̂(b), Λ(a*)>.
CheckReport check_ft_pairing(const QuantumGroupPair& qg, const ComplexMatrix& b,
                             const ComplexMatrix& a, const Tolerance& tol = {});

}  // namespace qgft

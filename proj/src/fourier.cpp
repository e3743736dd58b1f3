#include "qgft/fourier.hpp"

#include <algorithm>

namespace qgft {

namespace {

void require_member(const SpanBasis& basis, const ComplexMatrix& x, const Tolerance& tol,
                    const char* what) {
  if (x.rows() != basis.rows() || x.cols() != basis.cols()) {
    throw DimensionMismatch(std::string(what) + ": element is not on H");
  }
  const double r = basis.residual(x);
  if (!tol.admits(r, max_abs(x))) {
    throw NotInAlgebra(std::string(what) + ": element lies outside the algebra (residual " +
                           std::to_string(r) + ")",
                       r);
  }
}

double spread_of(std::initializer_list<Complex> values) {
  double worst = 0.0;
  for (auto a = values.begin(); a != values.end(); ++a) {
    for (auto b = a + 1; b != values.end(); ++b) worst = std::max(worst, std::abs(*a - *b));
  }
  return worst;
}

}  // namespace

ComplexMatrix fourier(const QuantumGroupPair& qg, const ComplexMatrix& a) {
  require_member(qg.algebra(), a, qg.tolerance(), "fourier");
  const ComplexVector& xi = qg.haar().xi;
  return contract_left(xi, a * xi, qg.unitary().matrix());
}

ComplexMatrix inverse_fourier(const QuantumGroupPair& qg, const ComplexMatrix& b) {
  require_member(qg.dual_algebra(), b, qg.tolerance(), "inverse_fourier");
  const ComplexVector& xi = qg.dual_haar().xi;
  return contract_right(xi, b * xi, qg.unitary().adjoint());
}

FourierReport fourier_report(const QuantumGroupPair& qg, const ComplexMatrix& a) {
  FourierReport r;
  r.input = a;
  r.output = fourier(qg, a);
  r.gns_input = qg.haar().gns(a);
  r.gns_output = qg.dual_haar().gns(r.output);
  r.deviation = (r.gns_output - r.gns_input).cwiseAbs().maxCoeff();
  return r;
}

FourierReport inverse_fourier_report(const QuantumGroupPair& qg, const ComplexMatrix& b) {
  FourierReport r;
  r.input = b;
  r.output = inverse_fourier(qg, b);
  r.gns_input = qg.dual_haar().gns(b);
  r.gns_output = qg.haar().gns(r.output);
  r.deviation = (r.gns_output - r.gns_input).cwiseAbs().maxCoeff();
  return r;
}

InversionReport check_inversion(const QuantumGroupPair& qg, std::span<const ComplexMatrix> m_samples,
                                std::span<const ComplexMatrix> mhat_samples,
                                const Tolerance& tol) {
  InversionReport r;
  double scale = 0.0;
  for (const auto& a : m_samples) {
    r.forward = std::max(r.forward, max_abs(inverse_fourier(qg, fourier(qg, a)) - a));
    scale = std::max(scale, max_abs(a));
  }
  for (const auto& b : mhat_samples) {
    r.backward = std::max(r.backward, max_abs(fourier(qg, inverse_fourier(qg, b)) - b));
    scale = std::max(scale, max_abs(b));
  }
  r.tolerance = tol.absolute + tol.relative * scale;
  r.pass = r.deviation() <= r.tolerance;
  return r;
}

PlancherelValue plancherel(const QuantumGroupPair& qg, const ComplexMatrix& a) {
  const ComplexMatrix fa = fourier(qg, a);
  PlancherelValue v;
  v.lhs = qg.dual_haar()(fa.adjoint() * fa);
  v.rhs = qg.haar()(a.adjoint() * a);
  v.deviation = std::abs(v.lhs - v.rhs);
  return v;
}

ComplexMatrix convolve(const QuantumGroupPair& qg, const ComplexMatrix& a, const ComplexMatrix& c) {
  return inverse_fourier(qg, fourier(qg, a) * fourier(qg, c));
}

ComplexMatrix convolve_dual(const QuantumGroupPair& qg, const ComplexMatrix& b,
                            const ComplexMatrix& d) {
  return fourier(qg, inverse_fourier(qg, b) * inverse_fourier(qg, d));
}

namespace {

ComplexMatrix convolve_generic(const SpanBasis& basis, const AlgebraMap& s_inv, const Weight& haar,
                               const Comultiplication& comult, const ComplexMatrix& a,
                               const ComplexMatrix& c) {
  const TensorExpansion e = expand(comult(c), basis, basis);
  const ComplexMatrix z = assemble(s_inv.matrix * e.coefficients, basis, basis);
  return contract_left(haar.xi, a * haar.xi, z);
}

}  // namespace

ComplexMatrix convolve_direct(const QuantumGroupPair& qg, const ComplexMatrix& a,
                              const ComplexMatrix& c) {
  require_member(qg.algebra(), a, qg.tolerance(), "convolve");
  require_member(qg.algebra(), c, qg.tolerance(), "convolve");
  return convolve_generic(qg.algebra(), qg.antipode_inverse(), qg.haar(),
                          [&](const ComplexMatrix& x) { return qg.comultiply(x); }, a, c);
}

ComplexMatrix convolve_dual_direct(const QuantumGroupPair& qg, const ComplexMatrix& b,
                                   const ComplexMatrix& d) {
  require_member(qg.dual_algebra(), b, qg.tolerance(), "convolve_dual");
  require_member(qg.dual_algebra(), d, qg.tolerance(), "convolve_dual");
  return convolve_generic(qg.dual_algebra(), qg.dual_antipode_inverse(), qg.dual_haar(),
                          [&](const ComplexMatrix& y) { return qg.dual_comultiply(y); }, b, d);
}

PairingValue pairing(const QuantumGroupPair& qg, const ComplexMatrix& b, const ComplexMatrix& a) {
  PairingValue v;
  v.via_inverse = qg.haar()(a * inverse_fourier(qg, b));
  v.via_forward = qg.dual_haar()(fourier(qg, a.adjoint()).adjoint() * b);
  const ComplexVector& xi = qg.haar().xi;
  const ComplexVector& xihat = qg.dual_haar().xi;
  // (φ⊗φ̂)((a⊗1)W*(1⊗b)) = <W*(ξ⊗bξ̂), a*ξ⊗ξ̂>
  const ComplexVector ket = qg.unitary().adjoint() * kron(xi, b * xihat);
  const ComplexVector bra = kron(a.adjoint() * xi, xihat);
  v.via_unitary = bra.dot(ket);
  v.spread = spread_of({v.via_inverse, v.via_forward, v.via_unitary});
  return v;
}

PairingAxiomsReport check_pairing_axioms(const QuantumGroupPair& qg,
                                         std::span<const PairingSample> samples,
                                         const Tolerance& tol) {
  PairingAxiomsReport r;
  const ComplexMatrix& w = qg.unitary().matrix();
  double scale = 0.0;
  for (const PairingSample& s : samples) {
    const ComplexMatrix b1 = slice_left(s.omega1, w);
    const ComplexMatrix b2 = slice_left(s.omega2, w);
    const ComplexMatrix a1 = slice_right(s.theta1, w);
    const ComplexMatrix a2 = slice_right(s.theta2, w);

    // ⟨b1 b2|a1⟩ = θ1(b1 b2) against (ω1⊗ω2)(Δ a1).
    const Complex p_lhs = s.theta1(b1 * b2);
    const Complex p_rhs =
        Functional(kron(s.omega1.density(), s.omega2.density()))(qg.comultiply(a1));
    r.product.deviation = std::max(r.product.deviation, std::abs(p_lhs - p_rhs));

    // ⟨b1|a1 a2⟩ = ω1(a1 a2) against (θ1⊗θ2)(Δ̂^cop b1), Δ̂^cop(y) = W(y⊗1)W*.
    const Complex c_lhs = s.omega1(a1 * a2);
    const ComplexMatrix cop = qg.unitary().conjugate(kron(b1, identity(qg.dimension())));
    const Complex c_rhs = Functional(kron(s.theta1.density(), s.theta2.density()))(cop);
    r.coproduct.deviation = std::max(r.coproduct.deviation, std::abs(c_lhs - c_rhs));

    // ⟨b1|S a1⟩ = ω1(S a1) against θ1(Ŝ⁻¹ b1) and θ1((ω̄1♯⊗id)(W)).
    const Complex s_lhs = s.omega1(qg.apply_antipode(a1));
    const Complex s_rhs = s.theta1(qg.dual_antipode_inverse().apply(qg.dual_algebra(), b1));
    const Functional bar_sharp = sharp(s.omega1.bar(), qg.antipode(), qg.algebra());
    const Complex s_alt = s.theta1(slice_left(bar_sharp, w));
    r.antipode.deviation =
        std::max({r.antipode.deviation, std::abs(s_lhs - s_rhs), std::abs(s_lhs - s_alt)});

    scale = std::max({scale, std::abs(p_lhs), std::abs(c_lhs), std::abs(s_lhs)});
  }
  settle(r.product, tol, scale);
  settle(r.coproduct, tol, scale);
  settle(r.antipode, tol, scale);
  return r;
}

CheckReport check_ft_pairing(const QuantumGroupPair& qg, const ComplexMatrix& b,
                             const ComplexMatrix& a, const Tolerance& tol) {
  const Complex direct = qg.haar()(a * inverse_fourier(qg, b));
  const Complex gns = inner(qg.dual_haar().gns(b), qg.haar().gns(a.adjoint()));
  CheckReport r;
  r.deviation = std::abs(direct - gns);
  settle(r, tol, std::abs(direct));
  return r;
}

}  // namespace qgft

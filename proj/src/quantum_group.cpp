#include "qgft/quantum_group.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qgft {

namespace {

// (id⊗ω_kl)(W) with ω_kl(x) = x(k,l): the (k,l) entries of every leg-2 block.
ComplexMatrix unit_slice_right(const ComplexMatrix& w, Index n, Index k, Index l) {
  ComplexMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out(i, j) = w(i * n + k, j * n + l);
  }
  return out;
}

// (ω_kl⊗id)(W): the (k,l) block over leg 1.
ComplexMatrix unit_slice_left(const ComplexMatrix& w, Index n, Index k, Index l) {
  return w.block(k * n, l * n, n, n);
}

double scale_of(const ComplexMatrix& x) { return max_abs(x); }

GeneratedAlgebra generate(const std::vector<ComplexMatrix>& slices, const Tolerance& tol,
                          bool require_closure, const char* name) {
  GeneratedAlgebra out;
  out.basis = span_basis(slices, tol);
  std::tie(out.product_residual, out.adjoint_residual) = closure_residuals(out.basis);
  const double worst = std::max(out.product_residual, out.adjoint_residual);
  if (require_closure && !tol.admits(worst, 1.0)) {
    throw ClosureFailure(std::string(name) + ": slice span is not a *-algebra (residual " +
                             std::to_string(worst) + ")",
                         worst);
  }
  return out;
}

}  // namespace

std::pair<double, double> closure_residuals(const SpanBasis& basis) {
  double product = 0.0;
  double adjoint = 0.0;
  for (Index i = 0; i < basis.size(); ++i) {
    const ComplexMatrix& x = basis.element(i);
    const double sx = std::sqrt(basis.norm2(i));
    adjoint = std::max(adjoint, basis.residual(x.adjoint()) / sx);
    for (Index j = 0; j < basis.size(); ++j) {
      const double sy = std::sqrt(basis.norm2(j));
      product = std::max(product, basis.residual(x * basis.element(j)) / (sx * sy));
    }
  }
  return {product, adjoint};
}

GeneratedAlgebra generate_M(const MultiplicativeUnitary& mu, const Tolerance& tol,
                            bool require_closure) {
  const Index n = mu.dimension();
  std::vector<ComplexMatrix> slices;
  slices.reserve(static_cast<std::size_t>(n * n));
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) slices.push_back(unit_slice_right(mu.matrix(), n, k, l));
  }
  return generate(slices, tol, require_closure, "generate_M");
}

GeneratedAlgebra generate_Mhat(const MultiplicativeUnitary& mu, const Tolerance& tol,
                               bool require_closure) {
  const Index n = mu.dimension();
  std::vector<ComplexMatrix> slices;
  slices.reserve(static_cast<std::size_t>(n * n));
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) slices.push_back(unit_slice_left(mu.matrix(), n, k, l));
  }
  return generate(slices, tol, require_closure, "generate_Mhat");
}

ComplexMatrix comultiply(const MultiplicativeUnitary& mu, const ComplexMatrix& x) {
  return mu.conjugate_leg2(x);
}

ComplexMatrix dual_comultiply(const MultiplicativeUnitary& mu, const ComplexMatrix& y) {
  // ΣW(y⊗1)W*Σ = Ŵ*(1⊗y)Ŵ for Ŵ = ΣW*Σ.
  return mu.dual().conjugate_leg2(y);
}

// ---------------------------------------------------------------------------
// Antipodes

ComplexMatrix AlgebraMap::apply(const SpanBasis& basis, const ComplexMatrix& x) const {
  return basis.combine(matrix * basis.coordinates(x));
}

namespace {

// Least-squares map sending inputs[k] to outputs[k] in basis coordinates.
AlgebraMap fit_map(const SpanBasis& basis, const std::vector<ComplexMatrix>& inputs,
                   const std::vector<ComplexMatrix>& outputs, const Tolerance& tol,
                   const char* name) {
  const Index m = basis.size();
  const auto count = static_cast<Index>(inputs.size());
  Eigen::MatrixXcd x(m, count);
  Eigen::MatrixXcd y(m, count);
  double outside = 0.0;
  double scale = 0.0;
  for (Index k = 0; k < count; ++k) {
    const auto& in = inputs[static_cast<std::size_t>(k)];
    const auto& out = outputs[static_cast<std::size_t>(k)];
    x.col(k) = basis.coordinates(in);
    y.col(k) = basis.coordinates(out);
    outside = std::max(outside, max_abs(in - basis.combine(x.col(k))));
    outside = std::max(outside, max_abs(out - basis.combine(y.col(k))));
    scale = std::max({scale, scale_of(in), scale_of(out)});
  }
  AlgebraMap map;
  if (m == 0) return map;
  // S X = Y  <=>  (X X*) S* = X Y*.
  const Eigen::MatrixXcd gram = x * x.adjoint();
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
  const auto d = ldlt.vectorD().cwiseAbs();
  if (d.minCoeff() <= kRankCutoff * d.maxCoeff()) {
    throw InconsistentSlices(std::string(name) + ": slices do not span the algebra",
                             std::numeric_limits<double>::infinity());
  }
  map.matrix = ldlt.solve(x * y.adjoint()).adjoint();
  double misfit = 0.0;
  for (Index k = 0; k < count; ++k) {
    misfit = std::max(misfit, max_abs(basis.combine(map.matrix * x.col(k)) -
                                      outputs[static_cast<std::size_t>(k)]));
  }
  map.residual = std::max(misfit, outside);
  if (!tol.admits(map.residual, scale)) {
    throw InconsistentSlices(std::string(name) + ": slice relations are inconsistent (residual " +
                                 std::to_string(map.residual) + ")",
                             map.residual);
  }
  return map;
}

}  // namespace

AlgebraMap antipode_from_slices(const MultiplicativeUnitary& mu, const SpanBasis& m_basis,
                                const Tolerance& tol) {
  const Index n = mu.dimension();
  std::vector<ComplexMatrix> in;
  std::vector<ComplexMatrix> out;
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      in.push_back(unit_slice_right(mu.matrix(), n, k, l));
      out.push_back(unit_slice_right(mu.adjoint(), n, k, l));
    }
  }
  return fit_map(m_basis, in, out, tol, "antipode_from_slices");
}

AlgebraMap antipode_hat_from_slices(const MultiplicativeUnitary& mu, const SpanBasis& mhat_basis,
                                    const Tolerance& tol) {
  const Index n = mu.dimension();
  std::vector<ComplexMatrix> in;
  std::vector<ComplexMatrix> out;
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      in.push_back(unit_slice_left(mu.adjoint(), n, k, l));
      out.push_back(unit_slice_left(mu.matrix(), n, k, l));
    }
  }
  return fit_map(mhat_basis, in, out, tol, "antipode_hat_from_slices");
}

AlgebraMap invert(const AlgebraMap& map, double* condition) {
  AlgebraMap inv;
  if (map.matrix.size() == 0) {
    if (condition) *condition = 1.0;
    return inv;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(map.matrix);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (condition) *condition = cond;
  if (!(cond < 1.0 / kRankCutoff)) {
    throw SingularAntipode("antipode is not invertible on the algebra (condition " +
                           std::to_string(cond) + ")");
  }
  inv.matrix = map.matrix.partialPivLu().inverse();
  inv.residual = map.residual;
  return inv;
}

Functional sharp(const Functional& omega, const AlgebraMap& antipode, const SpanBasis& basis) {
  ComplexMatrix density = ComplexMatrix::Zero(basis.rows(), basis.cols());
  for (Index i = 0; i < basis.size(); ++i) {
    const ComplexMatrix& q = basis.element(i);
    const Complex value = std::conj(omega(antipode.apply(basis, q).adjoint()));
    density.noalias() += (value / basis.norm2(i)) * q.adjoint();
  }
  return Functional(std::move(density));
}

// ---------------------------------------------------------------------------
// QuantumGroupPair

namespace {

// Unit-norm null vector of a tall matrix, required to be one-dimensional.
ComplexVector null_vector(const Eigen::MatrixXcd& a, const char* what) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Index k = sv.size();
  const double top = std::max(sv(0), 1.0);
  if (sv(k - 1) > kRankCutoff * top) {
    throw WeightNotFound(std::string(what) + ": W has no invariant vector");
  }
  if (k >= 2 && sv(k - 2) <= kRankCutoff * top) {
    throw WeightNotFound(std::string(what) + ": invariant vector is not unique");
  }
  return svd.matrixV().col(k - 1);
}

// Rotate the phase so the largest-magnitude entry is real and positive.
ComplexVector fix_phase(ComplexVector v) {
  Index best = 0;
  const double peak = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= peak * (1.0 - 1e-12)) {
      best = i;
      break;
    }
  }
  return v * (std::abs(v(best)) / v(best));
}

}  // namespace

QuantumGroupPair QuantumGroupPair::from_unitary(MultiplicativeUnitary mu, const Tolerance& tol) {
  const Index n = mu.dimension();
  const ComplexMatrix& w = mu.matrix();
  GeneratedAlgebra m = generate_M(mu, tol);
  GeneratedAlgebra mhat = generate_Mhat(mu, tol);

  // ξ_φ = Λ(1): W(v⊗ξ) = v⊗ξ for all v, i.e. W_ij ξ = δ_ij ξ for the leg-1 blocks.
  Eigen::MatrixXcd fixed2(n * n * n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Eigen::MatrixXcd blk = w.block(i * n, j * n, n, n);
      if (i == j) blk -= Eigen::MatrixXcd::Identity(n, n);
      fixed2.middleRows((i * n + j) * n, n) = blk;
    }
  }
  ComplexVector xi = fix_phase(null_vector(fixed2, "left Haar weight"));
  xi *= std::sqrt(static_cast<double>(n)) / xi.norm();

  // ξ_φ̂ = Λ̂(1): W(ξ̂⊗v) = ξ̂⊗v, i.e. Σ_j ξ̂_j W_ij = ξ̂_i 1.
  Eigen::MatrixXcd fixed1(n * n * n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index r = 0; r < n; ++r) {
      for (Index c = 0; c < n; ++c) {
        for (Index j = 0; j < n; ++j) {
          fixed1((i * n + r) * n + c, j) = w(i * n + r, j * n + c) - ((r == c && i == j) ? 1.0 : 0.0);
        }
      }
    }
  }
  ComplexVector dir = null_vector(fixed1, "dual Haar weight");

  // Scale so that <Λ̂((ω⊗id)(W)), Λ(x)> = ω(x*) over matrix units ω and basis x.
  Complex num = 0.0;
  double den = 0.0;
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      const ComplexVector v = unit_slice_left(w, n, k, l) * dir;
      for (Index b = 0; b < m.basis.size(); ++b) {
        const ComplexMatrix& x = m.basis.element(b);
        const Complex a = inner(v, x * xi);
        const Complex target = std::conj(x(l, k));  // ω_kl(x*) = conj(x(l,k))
        num += std::conj(a) * target;
        den += std::norm(a);
      }
    }
  }
  if (den == 0.0) throw WeightNotFound("dual Haar weight: GNS relation is degenerate");
  ComplexVector xihat = dir * (num / den);

  return assemble(std::move(mu), std::move(m.basis), std::move(mhat.basis), Weight{xi},
                  Weight{xihat}, tol);
}

QuantumGroupPair QuantumGroupPair::assemble(MultiplicativeUnitary mu, SpanBasis m_basis,
                                            SpanBasis mhat_basis, Weight phi, Weight phihat,
                                            const Tolerance& tol) {
  const Index n = mu.dimension();
  if (m_basis.rows() != n || mhat_basis.rows() != n || phi.xi.size() != n ||
      phihat.xi.size() != n) {
    throw DimensionMismatch("QuantumGroupPair: components do not share H");
  }
  QuantumGroupPair qg;
  qg.s_ = antipode_from_slices(mu, m_basis, tol);
  qg.shat_ = antipode_hat_from_slices(mu, mhat_basis, tol);
  qg.s_inv_ = invert(qg.s_, &qg.s_condition_);
  qg.shat_inv_ = invert(qg.shat_, &qg.shat_condition_);
  qg.mu_hat_ = mu.dual();
  qg.mu_ = std::move(mu);
  qg.m_basis_ = std::move(m_basis);
  qg.mhat_basis_ = std::move(mhat_basis);
  qg.phi_ = std::move(phi);
  qg.phihat_ = std::move(phihat);
  qg.tol_ = tol;
  return qg;
}

QuantumGroupPair QuantumGroupPair::dual() const {
  return assemble(mu_.dual(), mhat_basis_, m_basis_, phihat_, phi_, tol_);
}

ComplexMatrix QuantumGroupPair::lambda(const Functional& omega) const {
  return slice_left(omega, mu_.matrix());
}

ComplexMatrix QuantumGroupPair::lambda_hat(const Functional& theta) const {
  return slice_right(theta, mu_.adjoint());
}

// ---------------------------------------------------------------------------
// Checks

CheckReport check_coassociativity(const SpanBasis& basis, const Comultiplication& comult,
                                  const Tolerance& tol) {
  const Index m = basis.size();
  CheckReport r;
  if (m == 0) {
    r.pass = true;
    return r;
  }
  std::vector<Eigen::MatrixXcd> d(static_cast<std::size_t>(m));
  double membership = 0.0;
  double scale = 0.0;
  for (Index i = 0; i < m; ++i) {
    const ComplexMatrix z = comult(basis.element(i));
    TensorExpansion e = expand(z, basis, basis);
    membership = std::max(membership, e.residual);
    scale = std::max(scale, max_abs(z));
    d[static_cast<std::size_t>(i)] = std::move(e.coefficients);
  }
  // Δ(Q_i) = Σ D^i_kl Q_k⊗Q_l. For Δx = Σ C_ij Q_i⊗Q_j:
  //   (Δ⊗id)Δx has coefficients Σ_i C_ij D^i_kl at (k,l,j),
  //   (id⊗Δ)Δx has coefficients Σ_j C_kj D^j_lt at (k,l,t).
  double worst = 0.0;
  for (Index x = 0; x < m; ++x) {
    const Eigen::MatrixXcd& c = d[static_cast<std::size_t>(x)];
    double diff2 = 0.0;
    for (Index k = 0; k < m; ++k) {
      for (Index l = 0; l < m; ++l) {
        for (Index j = 0; j < m; ++j) {
          Complex lhs = 0.0;
          for (Index i = 0; i < m; ++i) lhs += c(i, j) * d[static_cast<std::size_t>(i)](k, l);
          Complex rhs = 0.0;
          for (Index t = 0; t < m; ++t) rhs += c(k, t) * d[static_cast<std::size_t>(t)](l, j);
          diff2 += std::norm(lhs - rhs) * basis.norm2(k) * basis.norm2(l) * basis.norm2(j);
        }
      }
    }
    worst = std::max(worst, std::sqrt(diff2 / basis.norm2(x)));
  }
  r.deviation = std::max(worst, membership);
  settle(r, tol, std::max(scale, 1.0));
  return r;
}

CheckReport check_left_invariance(const Weight& weight, const Comultiplication& comult,
                                  const SpanBasis& basis, const Tolerance& tol) {
  CheckReport r;
  double scale = 0.0;
  for (Index i = 0; i < basis.size(); ++i) {
    const ComplexMatrix& x = basis.element(i);
    const ComplexMatrix sliced = contract_right(weight.xi, weight.xi, comult(x));
    const ComplexMatrix expected = weight(x) * identity(x.rows());
    r.deviation = std::max(r.deviation, max_abs(sliced - expected));
    scale = std::max(scale, max_abs(expected));
  }
  settle(r, tol, scale);
  return r;
}

CheckReport check_right_invariance(const std::function<Complex(const ComplexMatrix&)>& psi,
                                   const Comultiplication& comult, const SpanBasis& basis,
                                   const Tolerance& tol) {
  CheckReport r;
  double scale = 0.0;
  Eigen::VectorXcd psi_basis(basis.size());
  for (Index i = 0; i < basis.size(); ++i) psi_basis(i) = psi(basis.element(i));
  for (Index i = 0; i < basis.size(); ++i) {
    const ComplexMatrix& x = basis.element(i);
    const TensorExpansion e = expand(comult(x), basis, basis);
    const ComplexMatrix sliced = basis.combine(e.coefficients.transpose() * psi_basis);
    const ComplexMatrix expected = psi_basis(i) * identity(x.rows());
    r.deviation = std::max({r.deviation, max_abs(sliced - expected), e.residual});
    scale = std::max(scale, max_abs(expected));
  }
  settle(r, tol, scale);
  return r;
}

CheckReport check_gns(const Weight& weight, const SpanBasis& basis, const Tolerance& tol) {
  CheckReport r;
  const Index m = basis.size();
  Eigen::MatrixXcd vectors(weight.xi.size(), m);
  double scale = 0.0;
  for (Index i = 0; i < m; ++i) vectors.col(i) = weight.gns(basis.element(i));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      const Complex lhs = inner(vectors.col(i), vectors.col(j));
      const Complex rhs = weight(basis.element(j).adjoint() * basis.element(i));
      r.deviation = std::max(r.deviation, std::abs(lhs - rhs));
      scale = std::max(scale, std::abs(rhs));
    }
  }
  bool faithful = true;
  if (m > 0) {
    // Λ is injective on the span iff the GNS vectors of the basis are independent.
    Eigen::MatrixXcd normalized = vectors;
    for (Index i = 0; i < m; ++i) normalized.col(i) /= std::sqrt(basis.norm2(i));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(normalized);
    const auto& sv = svd.singularValues();
    faithful = sv.size() == m && sv(m - 1) > kRankCutoff * std::max(sv(0), 1.0);
  }
  if (!faithful) r.deviation = std::numeric_limits<double>::infinity();
  settle(r, tol, scale);
  return r;
}

CheckReport check_phihat(const QuantumGroupPair& qg, std::span<const Functional> omegas,
                         const Tolerance& tol) {
  CheckReport r;
  double scale = 0.0;
  const SpanBasis& m = qg.algebra();
  for (const Functional& omega : omegas) {
    const ComplexVector hat = qg.dual_haar().gns(qg.lambda(omega));
    for (Index i = 0; i < m.size(); ++i) {
      const ComplexMatrix& x = m.element(i);
      const Complex lhs = inner(hat, qg.haar().gns(x));
      const Complex rhs = omega(x.adjoint());
      r.deviation = std::max(r.deviation, std::abs(lhs - rhs));
      scale = std::max(scale, std::abs(rhs));
    }
  }
  settle(r, tol, scale);
  return r;
}

CheckReport check_phihatdual(const QuantumGroupPair& qg, std::span<const Functional> omegas,
                             const Tolerance& tol) {
  CheckReport r;
  double scale = 0.0;
  const SpanBasis& mhat = qg.dual_algebra();
  for (const Functional& omega : omegas) {
    const ComplexVector v = qg.haar().gns(qg.lambda_hat(omega));
    for (Index i = 0; i < mhat.size(); ++i) {
      const ComplexMatrix& y = mhat.element(i);
      const Complex lhs = inner(v, qg.dual_haar().gns(y));
      const Complex rhs = omega(y.adjoint());
      r.deviation = std::max(r.deviation, std::abs(lhs - rhs));
      scale = std::max(scale, std::abs(rhs));
    }
  }
  settle(r, tol, scale);
  return r;
}

AntipodeReport check_antipodes(const QuantumGroupPair& qg, const Tolerance& tol) {
  AntipodeReport out;
  out.slices.deviation = std::max(qg.antipode().residual, qg.dual_antipode().residual);
  settle(out.slices, tol, 1.0);

  const auto sides = {std::pair{&qg.algebra(), &qg.antipode()},
                      std::pair{&qg.dual_algebra(), &qg.dual_antipode()}};
  double scale = 0.0;
  for (const auto& [basis, s] : sides) {
    const Eigen::MatrixXcd sq = s->matrix * s->matrix;
    for (Index i = 0; i < basis->size(); ++i) {
      const ComplexMatrix& x = basis->element(i);
      scale = std::max(scale, max_abs(x));
      out.square.deviation =
          std::max(out.square.deviation, max_abs(basis->combine(sq * basis->coordinates(x)) - x));
      const ComplexMatrix back = s->apply(*basis, s->apply(*basis, x).adjoint()).adjoint();
      out.star.deviation = std::max(out.star.deviation, max_abs(back - x));
      for (Index j = 0; j < basis->size(); ++j) {
        const ComplexMatrix& y = basis->element(j);
        const ComplexMatrix lhs = s->apply(*basis, x * y);
        const ComplexMatrix rhs = s->apply(*basis, y) * s->apply(*basis, x);
        out.anti_multiplicative.deviation =
            std::max(out.anti_multiplicative.deviation, max_abs(lhs - rhs));
      }
    }
  }
  settle(out.square, tol, scale);
  settle(out.star, tol, scale);
  settle(out.anti_multiplicative, tol, scale * scale);
  return out;
}

SharpReport check_sharp(const QuantumGroupPair& qg, std::span<const Functional> omegas,
                        const Tolerance& tol) {
  SharpReport out;
  double scale = 0.0;
  const SpanBasis& m = qg.algebra();
  for (const Functional& omega : omegas) {
    const Functional s1 = sharp(omega, qg.antipode(), m);
    const ComplexMatrix lhs = qg.lambda(omega).adjoint();
    const ComplexMatrix rhs = qg.lambda(s1);
    out.adjoint.deviation = std::max(out.adjoint.deviation, max_abs(lhs - rhs));
    scale = std::max(scale, max_abs(lhs));
    const Functional s2 = sharp(s1, qg.antipode(), m);
    for (Index i = 0; i < m.size(); ++i) {
      const ComplexMatrix& x = m.element(i);
      out.involution.deviation = std::max(out.involution.deviation, std::abs(s2(x) - omega(x)));
    }
  }
  settle(out.adjoint, tol, scale);
  settle(out.involution, tol, scale);
  return out;
}

namespace {

// Density of the functional x ↦ (ρ1⊗ρ2)(U x_{leg} U*) restricted back to one leg:
// tr((ρ1⊗ρ2) Z) over Z = conj * (embedded x) * conj* equals tr(Tr_other(conj*(ρ1⊗ρ2)conj) x).
ComplexMatrix partial_trace_leg1(const ComplexMatrix& z, Index n) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) out += z.block(i * n, i * n, n, n);
  return out;
}

// ΣzΣ by index swap.
ComplexMatrix flip_conjugate(const ComplexMatrix& z, Index n) {
  const auto swap = [n](Index p) { return (p % n) * n + p / n; };
  ComplexMatrix out(z.rows(), z.cols());
  for (Index p = 0; p < z.rows(); ++p) {
    for (Index q = 0; q < z.cols(); ++q) out(p, q) = z(swap(p), swap(q));
  }
  return out;
}

ComplexMatrix partial_trace_leg2(const ComplexMatrix& z, Index n) {
  ComplexMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out(i, j) = z.block(i * n, j * n, n, n).trace();
  }
  return out;
}

}  // namespace

SliceProductReport check_slice_products(const QuantumGroupPair& qg,
                                        std::span<const std::pair<Functional, Functional>> pairs,
                                        const Tolerance& tol) {
  SliceProductReport out;
  const Index n = qg.dimension();
  const ComplexMatrix& w = qg.unitary().matrix();
  const ComplexMatrix& wa = qg.unitary().adjoint();
  double scale = 0.0;
  for (const auto& [f1, f2] : pairs) {
    const ComplexMatrix rho = kron(f1.density(), f2.density());

    // μ(x) = tr(ρ W*(1⊗x)W) = tr(Tr_1(WρW*) x).
    const Functional mu(partial_trace_leg1(qg.unitary().conjugate(rho), n));
    const ComplexMatrix lhs1 = slice_left(f1, w) * slice_left(f2, w);
    out.leg1.deviation = std::max(out.leg1.deviation, max_abs(lhs1 - slice_left(mu, w)));

    // ν(y) = tr(ρ W(y⊗1)W*) = tr(Tr_2(W*ρW) y).
    const Functional nu(partial_trace_leg2(qg.unitary().adjoint_conjugate(rho), n));
    const ComplexMatrix lhs2 = slice_right(f1, w) * slice_right(f2, w);
    out.leg2.deviation = std::max(out.leg2.deviation, max_abs(lhs2 - slice_right(nu, w)));

    // ν'(y) = tr(ρ ΣW(y⊗1)W*Σ) = tr(Tr_2(W*ΣρΣW) y).
    const Functional nu_adj(partial_trace_leg2(qg.unitary().adjoint_conjugate(flip_conjugate(rho, n)), n));
    const ComplexMatrix lhs3 = slice_right(f1, wa) * slice_right(f2, wa);
    out.leg2_adj.deviation =
        std::max(out.leg2_adj.deviation, max_abs(lhs3 - slice_right(nu_adj, wa)));

    scale = std::max({scale, max_abs(lhs1), max_abs(lhs2), max_abs(lhs3)});
  }
  settle(out.leg1, tol, scale);
  settle(out.leg2, tol, scale);
  settle(out.leg2_adj, tol, scale);
  return out;
}

PontryaginReport pontryagin_check(const MultiplicativeUnitary& mu, const SpanBasis& m_basis,
                                  const SpanBasis& mhat_basis, const Tolerance& tol) {
  const MultiplicativeUnitary hat = mu.dual();
  PontryaginReport r;
  const SpanBasis double_dual = generate_Mhat(hat, tol, false).basis;
  const SpanBasis dual = generate_M(hat, tol, false).basis;
  r.algebra = subspace_equal(double_dual, m_basis, tol);
  r.dual_algebra = subspace_equal(dual, mhat_basis, tol);
  r.deviation = std::max(r.algebra.deviation, r.dual_algebra.deviation);
  r.tolerance = tol.absolute + tol.relative;
  r.pass = r.algebra.equal && r.dual_algebra.equal && r.deviation <= r.tolerance;
  return r;
}

double membership_residual(const QuantumGroupPair& qg) {
  return expand(qg.unitary().matrix(), qg.algebra(), qg.dual_algebra()).residual;
}

}  // namespace qgft

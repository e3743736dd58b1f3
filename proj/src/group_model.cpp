#include "qgft/group_model.hpp"

#include <cmath>

#include "qgft/fourier.hpp"

namespace qgft {

MultiplicativeUnitary group_unitary(const FiniteGroup& group) {
  const auto n = static_cast<Index>(group.order());
  std::vector<Index> image(static_cast<std::size_t>(n * n));
  for (Index s = 0; s < n; ++s) {
    for (Index t = 0; t < n; ++t) {
      const auto st = static_cast<Index>(group.mult(static_cast<std::size_t>(s), static_cast<std::size_t>(t)));
      image[static_cast<std::size_t>(s * n + t)] = s * n + st;
    }
  }
  return MultiplicativeUnitary::permutation(n, std::move(image));
}

GroupModel GroupModel::build(FiniteGroup group, const Tolerance& tol) {
  const auto n = static_cast<Index>(group.order());
  std::vector<ComplexMatrix> diagonals;
  std::vector<ComplexMatrix> translations;
  for (Index g = 0; g < n; ++g) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    d(g, g) = 1.0;
    diagonals.push_back(std::move(d));
    ComplexMatrix l = ComplexMatrix::Zero(n, n);
    for (Index y = 0; y < n; ++y) {
      l(static_cast<Index>(group.mult(static_cast<std::size_t>(g), static_cast<std::size_t>(y))), y) = 1.0;
    }
    translations.push_back(std::move(l));
  }
  Weight phi{ComplexVector::Ones(n)};
  Weight phihat{ComplexVector::Zero(n)};
  phihat.xi(static_cast<Index>(group.identity())) = 1.0;
  QuantumGroupPair qg = QuantumGroupPair::assemble(
      group_unitary(group), SpanBasis::orthogonal(n, n, std::move(diagonals)),
      SpanBasis::orthogonal(n, n, std::move(translations)), std::move(phi), std::move(phihat), tol);
  return GroupModel(std::move(group), std::move(qg));
}

void GroupModel::check_length(const GroupFunction& f) const {
  if (f.size() != static_cast<Index>(order())) {
    throw DimensionMismatch("group function has length " + std::to_string(f.size()) +
                            ", group order is " + std::to_string(order()));
  }
}

ComplexMatrix GroupModel::pi(const GroupFunction& a) const {
  check_length(a);
  return a.asDiagonal();
}

ComplexMatrix GroupModel::L(const GroupFunction& b) const {
  check_length(b);
  const auto n = static_cast<Index>(order());
  ComplexMatrix out(n, n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      out(x, y) = b(static_cast<Index>(
          group_.mult(static_cast<std::size_t>(x), group_.inv(static_cast<std::size_t>(y)))));
    }
  }
  return out;
}

GroupFunction GroupModel::from_pi(const ComplexMatrix& x) const {
  const double r = qg_.algebra().residual(x);
  if (!qg_.tolerance().admits(r, max_abs(x))) {
    throw NotInAlgebra("operator is not a multiplication operator", r);
  }
  return x.diagonal();
}

GroupFunction GroupModel::from_L(const ComplexMatrix& y) const {
  const double r = qg_.dual_algebra().residual(y);
  if (!qg_.tolerance().admits(r, max_abs(y))) {
    throw NotInAlgebra("operator is not a left convolution operator", r);
  }
  return y.col(static_cast<Index>(group_.identity()));
}

GroupFunction GroupModel::star(const GroupFunction& a) const {
  check_length(a);
  return a.conjugate();
}

GroupFunction GroupModel::dual_star(const GroupFunction& b) const {
  check_length(b);
  GroupFunction out(b.size());
  for (Index x = 0; x < b.size(); ++x) {
    const auto xi = group_.inv(static_cast<std::size_t>(x));
    out(x) = modular(xi) * std::conj(b(static_cast<Index>(xi)));
  }
  return out;
}

GroupFunction GroupModel::classical_convolution(const GroupFunction& a,
                                                const GroupFunction& c) const {
  check_length(a);
  check_length(c);
  const std::size_t n = order();
  GroupFunction out = GroupFunction::Zero(static_cast<Index>(n));
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      out(static_cast<Index>(y)) +=
          a(static_cast<Index>(x)) * c(static_cast<Index>(group_.mult(group_.inv(x), y)));
    }
  }
  return out;
}

DftComparison dft_compare(const GroupModel& model, const GroupFunction& a, const Tolerance& tol) {
  const ComplexMatrix chi = model.group().characters();
  const auto n = static_cast<Index>(model.order());
  const ComplexMatrix u = chi / std::sqrt(static_cast<double>(n));
  const ComplexMatrix fa = fourier(model.pair(), model.pi(a));
  const ComplexMatrix d = u.conjugate() * fa * u.transpose();

  DftComparison out;
  out.diagonal = d.diagonal();
  out.character_sums = chi.conjugate() * a;
  ComplexMatrix off = d;
  off.diagonal().setZero();
  out.off_diagonal = max_abs(off);
  const double diag_dev = (out.diagonal - out.character_sums).cwiseAbs().maxCoeff();
  out.deviation = std::max(out.off_diagonal, diag_dev);
  out.pass = tol.admits(out.deviation, out.character_sums.cwiseAbs().maxCoeff());
  return out;
}

}  // namespace qgft

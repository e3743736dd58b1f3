#include <gtest/gtest.h>

#include "qgft/fourier.hpp"
#include "qgft/group_model.hpp"
#include "qgft/sampling.hpp"
#include "support.hpp"

using namespace qgft;
namespace t = qgft::testing;

namespace {

GroupFunction fn(std::initializer_list<Complex> v) {
  GroupFunction f(static_cast<Index>(v.size()));
  Index i = 0;
  for (Complex z : v) f(i++) = z;
  return f;
}

// (a∗c)(y) = Σ_x a(x) c(x⁻¹y), written out independently of the library.
GroupFunction classical(const FiniteGroup& g, const GroupFunction& a, const GroupFunction& c) {
  GroupFunction out = GroupFunction::Zero(a.size());
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y)
      out(static_cast<Index>(y)) += a(static_cast<Index>(x)) * c(static_cast<Index>(g.mult(g.inv(x), y)));
  return out;
}

ComplexMatrix left_regular(const FiniteGroup& g, const GroupFunction& b) {
  const auto n = static_cast<Index>(g.order());
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y)
      l(static_cast<Index>(x), static_cast<Index>(y)) = b(static_cast<Index>(g.mult(x, g.inv(y))));
  return l;
}

struct Fixture {
  GroupModel model;
  explicit Fixture(const FiniteGroup& g) : model(GroupModel::build(g)) {}
  const QuantumGroupPair& qg() const { return model.pair(); }
};

}  // namespace

TEST(Fourier, CyclicTwoDeltas) {
  Fixture z2(FiniteGroup::cyclic(2));
  EXPECT_EQ(fourier(z2.qg(), z2.model.pi(fn({1, 0}))), identity(2));
  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(fourier(z2.qg(), z2.model.pi(fn({0, 1}))), swap);
  EXPECT_EQ(inverse_fourier(z2.qg(), identity(2)), z2.model.pi(fn({1, 0})));
}

TEST(Fourier, MapsMultiplicationToConvolutionOperators) {
  t::Rng rng(41);
  for (const FiniteGroup& g : {FiniteGroup::cyclic(3), FiniteGroup::cyclic(7), FiniteGroup::symmetric(3),
                               FiniteGroup::dihedral(4)}) {
    Fixture f(g);
    for (int k = 0; k < 5; ++k) {
      const GroupFunction a = t::random_vector(rng, static_cast<Index>(g.order()));
      EXPECT_LE(max_abs_diff(fourier(f.qg(), f.model.pi(a)), left_regular(g, a)), 1e-12);
      EXPECT_LE(max_abs_diff(inverse_fourier(f.qg(), left_regular(g, a)), f.model.pi(a)), 1e-12);
    }
  }
}

TEST(Fourier, RejectsOperatorsOutsideTheAlgebra) {
  Fixture z3(FiniteGroup::cyclic(3));
  ComplexMatrix off = ComplexMatrix::Zero(3, 3);
  off(0, 1) = 1.0;
  try {
    fourier(z3.qg(), off);
    FAIL() << "expected NotInAlgebra";
  } catch (const NotInAlgebra& e) {
    EXPECT_GE(e.residual(), 0.5);
  }
  // a diagonal matrix is in M but not in M̂ for a nontrivial group
  EXPECT_THROW(inverse_fourier(z3.qg(), z3.model.pi(fn({1, 2, 3}))), NotInAlgebra);
  EXPECT_THROW(fourier(z3.qg(), identity(2)), DimensionMismatch);
}

TEST(Fourier, Linear) {
  Fixture s3(FiniteGroup::symmetric(3));
  Sampler s(42);
  const ComplexMatrix a = s.element(s3.qg().algebra());
  const ComplexMatrix c = s.element(s3.qg().algebra());
  const Complex k(0.3, -1.7);
  EXPECT_LE(max_abs_diff(fourier(s3.qg(), a + k * c), fourier(s3.qg(), a) + k * fourier(s3.qg(), c)), 1e-12);
}

TEST(Fourier, GnsTransport) {
  Fixture d3(FiniteGroup::dihedral(3));
  for (const ComplexMatrix& a : d3.qg().algebra().elements()) {
    const FourierReport r = fourier_report(d3.qg(), a);
    EXPECT_LE(r.deviation, 1e-12);
    EXPECT_LE((r.gns_output - r.gns_input).cwiseAbs().maxCoeff(), 1e-12);
  }
  for (const ComplexMatrix& b : d3.qg().dual_algebra().elements()) {
    EXPECT_LE(inverse_fourier_report(d3.qg(), b).deviation, 1e-12);
  }
}

TEST(Inversion, BasesOfSeveralModels) {
  for (const FiniteGroup& g : {FiniteGroup::cyclic(1), FiniteGroup::cyclic(6), FiniteGroup::dihedral(3)}) {
    Fixture f(g);
    const InversionReport r = check_inversion(f.qg(), f.qg().algebra().elements(), f.qg().dual_algebra().elements());
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.deviation(), 1e-10);
    if (g.order() == 1) EXPECT_EQ(r.deviation(), 0.0);
  }
}

TEST(Inversion, ConjugatedDenseModel) {
  t::Rng rng(43);
  const FiniteGroup g = FiniteGroup::symmetric(3);
  const QuantumGroupPair qg = QuantumGroupPair::from_unitary(
      MultiplicativeUnitary::dense(t::conjugated(t::dense_group_w(g), t::random_unitary(rng, 6))));
  const InversionReport r = check_inversion(qg, qg.algebra().elements(), qg.dual_algebra().elements());
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.deviation(), 1e-10);
}

TEST(Plancherel, Examples) {
  Fixture z3(FiniteGroup::cyclic(3));
  const PlancherelValue p = plancherel(z3.qg(), z3.model.pi(fn({1, Complex(0, 2), -1})));
  EXPECT_NEAR(std::abs(p.rhs - 6.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p.lhs - 6.0), 0.0, 1e-12);
  const PlancherelValue zero = plancherel(z3.qg(), ComplexMatrix::Zero(3, 3));
  EXPECT_EQ(zero.lhs, Complex(0.0));
  EXPECT_EQ(zero.rhs, Complex(0.0));
  Fixture z2(FiniteGroup::cyclic(2));
  const PlancherelValue ones = plancherel(z2.qg(), z2.model.pi(fn({1, 1})));
  EXPECT_NEAR(std::abs(ones.lhs - 2.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ones.rhs - 2.0), 0.0, 1e-12);
}

TEST(Plancherel, RandomFunctionsOnNonAbelianGroup) {
  t::Rng rng(44);
  Fixture s3(FiniteGroup::symmetric(3));
  for (int k = 0; k < 10; ++k) {
    const GroupFunction a = t::random_vector(rng, 6);
    const PlancherelValue p = plancherel(s3.qg(), s3.model.pi(a));
    EXPECT_NEAR(std::abs(p.lhs - a.squaredNorm()), 0.0, 1e-10);
    EXPECT_LE(p.deviation, 1e-10);
  }
}

TEST(Convolution, Examples) {
  Fixture z2(FiniteGroup::cyclic(2));
  const auto& qg = z2.qg();
  const auto& m = z2.model;
  for (auto route : {&convolve, &convolve_direct}) {
    EXPECT_LE((m.from_pi(route(qg, m.pi(fn({1, 2})), m.pi(fn({3, 4})))) - fn({11, 10})).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((m.from_pi(route(qg, m.pi(fn({1, 0})), m.pi(fn({0, 1})))) - fn({0, 1})).cwiseAbs().maxCoeff(), 1e-12);
    const GroupFunction c = fn({Complex(2, 1), -5});
    EXPECT_LE((m.from_pi(route(qg, m.pi(fn({1, 0})), m.pi(c))) - c).cwiseAbs().maxCoeff(), 1e-12);
  }
  Fixture z3(FiniteGroup::cyclic(3));
  for (auto route : {&convolve, &convolve_direct}) {
    const ComplexMatrix u = z3.model.pi(fn({1, 1, 1}));
    EXPECT_LE((z3.model.from_pi(route(z3.qg(), u, u)) - fn({3, 3, 3})).cwiseAbs().maxCoeff(), 1e-12);
  }
  Fixture z1(FiniteGroup::cyclic(1));
  EXPECT_NEAR(std::abs(convolve_direct(z1.qg(), z1.model.pi(fn({3})), z1.model.pi(fn({Complex(0, 2)})))(0, 0) -
                       Complex(0, 6)),
              0.0, 1e-12);
}

TEST(Convolution, MatchesClassicalFormulaOnNonAbelianGroups) {
  t::Rng rng(45);
  for (const FiniteGroup& g : {FiniteGroup::symmetric(3), FiniteGroup::dihedral(4)}) {
    Fixture f(g);
    const auto n = static_cast<Index>(g.order());
    for (int k = 0; k < 5; ++k) {
      const GroupFunction a = t::random_vector(rng, n);
      const GroupFunction c = t::random_vector(rng, n);
      const GroupFunction expected = classical(g, a, c);
      EXPECT_LE((f.model.from_pi(convolve(f.qg(), f.model.pi(a), f.model.pi(c))) - expected).cwiseAbs().maxCoeff(),
                1e-10);
      EXPECT_LE((f.model.from_pi(convolve_direct(f.qg(), f.model.pi(a), f.model.pi(c))) - expected)
                    .cwiseAbs()
                    .maxCoeff(),
                1e-10);
    }
  }
}

TEST(Convolution, DualSideIsPointwise) {
  Fixture z2(FiniteGroup::cyclic(2));
  const auto& m = z2.model;
  for (auto route : {&convolve_dual, &convolve_dual_direct}) {
    const GroupFunction out = m.from_L(route(z2.qg(), m.L(fn({5, 7})), m.L(fn({2, 3}))));
    EXPECT_LE((out - fn({10, 21})).cwiseAbs().maxCoeff(), 1e-12);
  }
  t::Rng rng(46);
  for (const FiniteGroup& g : {FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)}) {
    Fixture f(g);
    const auto n = static_cast<Index>(g.order());
    const GroupFunction b = t::random_vector(rng, n);
    const GroupFunction d = t::random_vector(rng, n);
    const ComplexMatrix one = convolve_dual(f.qg(), f.model.L(b), f.model.L(d));
    const ComplexMatrix two = convolve_dual_direct(f.qg(), f.model.L(b), f.model.L(d));
    EXPECT_LE(max_abs_diff(one, two), 1e-10);
    EXPECT_LE((f.model.from_L(one) - b.cwiseProduct(d)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Convolution, RoutesAgreeOnConjugatedDenseModel) {
  t::Rng rng(47);
  const QuantumGroupPair qg = QuantumGroupPair::from_unitary(MultiplicativeUnitary::dense(
      t::conjugated(t::dense_group_w(FiniteGroup::dihedral(3)), t::random_unitary(rng, 6))));
  Sampler s(48);
  const ComplexMatrix a = s.element(qg.algebra());
  const ComplexMatrix c = s.element(qg.algebra());
  EXPECT_LE(max_abs_diff(convolve(qg, a, c), convolve_direct(qg, a, c)), 1e-10);
  const ComplexMatrix b = s.element(qg.dual_algebra());
  const ComplexMatrix d = s.element(qg.dual_algebra());
  EXPECT_LE(max_abs_diff(convolve_dual(qg, b, d), convolve_dual_direct(qg, b, d)), 1e-10);
}

TEST(Pairing, Examples) {
  Fixture z2(FiniteGroup::cyclic(2));
  const PairingValue p = pairing(z2.qg(), z2.model.L(fn({3, 4})), z2.model.pi(fn({1, 2})));
  for (Complex v : {p.via_inverse, p.via_forward, p.via_unitary}) EXPECT_NEAR(std::abs(v - 11.0), 0.0, 1e-12);
  EXPECT_LE(p.spread, 1e-12);
  const PairingValue zero = pairing(z2.qg(), z2.model.L(fn({3, 4})), ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(zero.value(), Complex(0.0));

  Fixture z3(FiniteGroup::cyclic(3));
  for (Index g = 0; g < 3; ++g)
    for (Index h = 0; h < 3; ++h) {
      GroupFunction dg = GroupFunction::Zero(3), dh = GroupFunction::Zero(3);
      dg(g) = 1.0;
      dh(h) = 1.0;
      const Complex v = pairing(z3.qg(), z3.model.L(dh), z3.model.pi(dg)).value();
      EXPECT_NEAR(std::abs(v - (g == h ? 1.0 : 0.0)), 0.0, 1e-12);
    }
}

TEST(Pairing, BilinearSumOnNonAbelianGroup) {
  t::Rng rng(49);
  Fixture s3(FiniteGroup::symmetric(3));
  for (int k = 0; k < 10; ++k) {
    const GroupFunction a = t::random_vector(rng, 6);
    const GroupFunction b = t::random_vector(rng, 6);
    const PairingValue p = pairing(s3.qg(), s3.model.L(b), s3.model.pi(a));
    EXPECT_LE(p.spread, 1e-10);
    EXPECT_NEAR(std::abs(p.value() - a.cwiseProduct(b).sum()), 0.0, 1e-10);
  }
}

TEST(Pairing, AxiomsOnGroupModels) {
  for (const FiniteGroup& g : {FiniteGroup::cyclic(1), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)}) {
    Fixture f(g);
    Sampler s(50);
    const Index n = f.qg().dimension();
    std::vector<PairingSample> samples;
    for (int k = 0; k < 20; ++k)
      samples.push_back({s.functional(n), s.functional(n), s.functional(n), s.functional(n)});
    const PairingAxiomsReport r = check_pairing_axioms(f.qg(), samples);
    EXPECT_TRUE(r.pass()) << g.order();
    EXPECT_LE(r.product.deviation, 1e-10);
    EXPECT_LE(r.coproduct.deviation, 1e-10);
    EXPECT_LE(r.antipode.deviation, 1e-10);
    if (g.order() == 1) {
      EXPECT_LE(r.product.deviation, 1e-15);
      EXPECT_LE(r.coproduct.deviation, 1e-15);
      EXPECT_LE(r.antipode.deviation, 1e-15);
    }
  }
}

TEST(Pairing, SliceElementsPairToTheFunctional) {
  // ⟨(ω⊗id)(W) | (id⊗θ)(W)⟩ = θ((ω⊗id)(W)) = (ω⊗θ)(W)
  t::Rng rng(51);
  Fixture d3(FiniteGroup::dihedral(3));
  const ComplexMatrix w = d3.qg().unitary().matrix();
  const Functional omega(t::random_matrix(rng, 6, 6));
  const Functional theta(t::random_matrix(rng, 6, 6));
  const ComplexMatrix b = slice_left(omega, w);
  const ComplexMatrix a = slice_right(theta, w);
  const Complex expected = (kron(omega.density(), theta.density()) * w).trace();
  EXPECT_NEAR(std::abs(pairing(d3.qg(), b, a).value() - expected), 0.0, 1e-10 * std::abs(expected));
}

TEST(FtPairing, InnerProductForm) {
  Fixture z2(FiniteGroup::cyclic(2));
  EXPECT_TRUE(check_ft_pairing(z2.qg(), z2.model.L(fn({3, 4})), z2.model.pi(fn({1, 2}))).pass);
  EXPECT_TRUE(check_ft_pairing(z2.qg(), ComplexMatrix::Zero(2, 2), z2.model.pi(fn({1, 2}))).pass);
  // ⟨Λ̂(1), Λ(1)⟩ = ⟨ξ_φ̂, ξ_φ⟩ = 1
  Fixture s3(FiniteGroup::symmetric(3));
  const Complex overlap = inner(s3.qg().dual_haar().gns(identity(6)), s3.qg().haar().gns(identity(6)));
  EXPECT_NEAR(std::abs(overlap - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(pairing(s3.qg(), identity(6), identity(6)).value() - 1.0), 0.0, 1e-12);
  t::Rng rng(52);
  const GroupFunction a = t::random_vector(rng, 6);
  const GroupFunction b = t::random_vector(rng, 6);
  EXPECT_TRUE(check_ft_pairing(s3.qg(), s3.model.L(b), s3.model.pi(a)).pass);
}

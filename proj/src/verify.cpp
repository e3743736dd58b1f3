#include "qgft/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "qgft/fourier.hpp"
#include "qgft/group_model.hpp"
#include "qgft/quantum_group.hpp"
#include "qgft/sampling.hpp"

namespace qgft {

bool VerificationReport::pass() const { return first_failure() == nullptr; }

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

constexpr double kUnevaluated = std::numeric_limits<double>::max();

CheckReport threshold(double deviation, const Tolerance& tol, double scale) {
  CheckReport r;
  r.deviation = deviation;
  settle(r, tol, scale);
  return r;
}

class Suite {
 public:
  Suite(std::string model, const VerifyOptions& options) : options_(options) {
    report_.model = std::move(model);
    report_.seed = options.seed;
  }

  /// Runs one check; returns false when it failed.
  bool run(const std::string& name, const std::function<CheckReport()>& body) {
    CheckResult result;
    result.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const CheckReport r = body();
      result.pass = r.pass;
      result.deviation = std::isfinite(r.deviation) ? r.deviation : kUnevaluated;
      result.tolerance = r.tolerance;
    } catch (const std::exception& e) {
      result.pass = false;
      result.deviation = kUnevaluated;
      result.tolerance = options_.tol.absolute;
      result.message = e.what();
    }
    if (options_.timing) {
      const auto stop = std::chrono::steady_clock::now();
      result.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }
    report_.checks.push_back(std::move(result));
    return report_.checks.back().pass;
  }

  VerificationReport finish() { return std::move(report_); }

 private:
  VerifyOptions options_;
  VerificationReport report_;
};

bool preamble(Suite& suite, const MultiplicativeUnitary& mu, const Tolerance& tol) {
  const bool pentagon_ok = suite.run("pentagon", [&] {
    const PentagonReport p = check_pentagon(mu, tol);
    CheckReport r;
    r.deviation = p.max_deviation;
    r.tolerance = p.exact ? 0.0 : tol.absolute + tol.relative;
    r.pass = p.pass;
    return r;
  });
  if (!pentagon_ok) return false;
  suite.run("unitarity", [&] { return threshold(unitarity_deviation(mu), tol, 1.0); });
  return true;
}

void algebra_checks(Suite& suite, const QuantumGroupPair& qg, const Tolerance& tol) {
  const auto generated = [&](bool hat) {
    const GeneratedAlgebra g =
        hat ? generate_Mhat(qg.unitary(), tol, false) : generate_M(qg.unitary(), tol, false);
    const SubspaceComparison cmp = subspace_equal(g.basis, hat ? qg.dual_algebra() : qg.algebra(), tol);
    const auto [prod, adj] = closure_residuals(hat ? qg.dual_algebra() : qg.algebra());
    return threshold(std::max({g.product_residual, g.adjoint_residual, cmp.deviation, prod, adj}), tol,
                     1.0);
  };
  suite.run("algebra_M", [&] { return generated(false); });
  suite.run("algebra_Mhat", [&] { return generated(true); });
}

struct Samples {
  std::vector<Functional> omegas;
  std::vector<std::pair<Functional, Functional>> functional_pairs;
  std::vector<PairingSample> pairing;
  std::vector<ComplexMatrix> m;
  std::vector<ComplexMatrix> m2;
  std::vector<ComplexMatrix> mhat;
  std::vector<ComplexMatrix> mhat2;
};

Samples draw(const QuantumGroupPair& qg, const VerifyOptions& options) {
  Sampler sampler(options.seed);
  const Index n = qg.dimension();
  Samples s;
  for (int i = 0; i < options.samples; ++i) {
    s.omegas.push_back(sampler.functional(n));
    s.functional_pairs.emplace_back(sampler.functional(n), sampler.functional(n));
    s.pairing.push_back({sampler.functional(n), sampler.functional(n), sampler.functional(n),
                         sampler.functional(n)});
    s.m.push_back(sampler.element(qg.algebra()));
    s.m2.push_back(sampler.element(qg.algebra()));
    s.mhat.push_back(sampler.element(qg.dual_algebra()));
    s.mhat2.push_back(sampler.element(qg.dual_algebra()));
  }
  return s;
}

void structure_checks(Suite& suite, const QuantumGroupPair& qg, const Samples& s,
                      const Tolerance& tol) {
  const Comultiplication delta = [&](const ComplexMatrix& x) { return qg.comultiply(x); };
  const Comultiplication delta_hat = [&](const ComplexMatrix& y) { return qg.dual_comultiply(y); };

  suite.run("unitary_membership", [&] { return threshold(membership_residual(qg), tol, 1.0); });
  suite.run("coassociativity_M", [&] { return check_coassociativity(qg.algebra(), delta, tol); });
  suite.run("coassociativity_Mhat",
            [&] { return check_coassociativity(qg.dual_algebra(), delta_hat, tol); });
  suite.run("left_invariance_M",
            [&] { return check_left_invariance(qg.haar(), delta, qg.algebra(), tol); });
  suite.run("left_invariance_Mhat",
            [&] { return check_left_invariance(qg.dual_haar(), delta_hat, qg.dual_algebra(), tol); });
  suite.run("right_invariance_M", [&] {
    const auto psi = [&](const ComplexMatrix& x) { return qg.haar()(qg.apply_antipode(x)); };
    return check_right_invariance(psi, delta, qg.algebra(), tol);
  });
  suite.run("right_invariance_Mhat", [&] {
    const auto psi = [&](const ComplexMatrix& y) { return qg.dual_haar()(qg.apply_dual_antipode(y)); };
    return check_right_invariance(psi, delta_hat, qg.dual_algebra(), tol);
  });
  suite.run("gns_M", [&] { return check_gns(qg.haar(), qg.algebra(), tol); });
  suite.run("gns_Mhat", [&] { return check_gns(qg.dual_haar(), qg.dual_algebra(), tol); });
  suite.run("phihat", [&] { return check_phihat(qg, s.omegas, tol); });
  suite.run("phihatdual", [&] { return check_phihatdual(qg, s.omegas, tol); });

  std::optional<AntipodeReport> antipodes;
  const auto antipode = [&](CheckReport AntipodeReport::*field) {
    if (!antipodes) antipodes = check_antipodes(qg, tol);
    return (*antipodes).*field;
  };
  suite.run("antipode_slices", [&] { return antipode(&AntipodeReport::slices); });
  suite.run("antipode_antimultiplicative",
            [&] { return antipode(&AntipodeReport::anti_multiplicative); });
  suite.run("antipode_square", [&] { return antipode(&AntipodeReport::square); });
  suite.run("antipode_star", [&] { return antipode(&AntipodeReport::star); });

  std::optional<SharpReport> sharps;
  const auto sharp_field = [&](CheckReport SharpReport::*field) {
    if (!sharps) sharps = check_sharp(qg, s.omegas, tol);
    return (*sharps).*field;
  };
  suite.run("sharp_adjoint", [&] { return sharp_field(&SharpReport::adjoint); });
  suite.run("sharp_involution", [&] { return sharp_field(&SharpReport::involution); });

  std::optional<SliceProductReport> products;
  const auto product = [&](CheckReport SliceProductReport::*field) {
    if (!products) products = check_slice_products(qg, s.functional_pairs, tol);
    return (*products).*field;
  };
  suite.run("slice_product_leg1", [&] { return product(&SliceProductReport::leg1); });
  suite.run("slice_product_leg2", [&] { return product(&SliceProductReport::leg2); });
  suite.run("slice_product_leg2_adjoint", [&] { return product(&SliceProductReport::leg2_adj); });
}

void fourier_checks(Suite& suite, const QuantumGroupPair& qg, const Samples& s,
                    const Tolerance& tol) {
  suite.run("fourier_inversion", [&] {
    const InversionReport inv =
        check_inversion(qg, qg.algebra().elements(), qg.dual_algebra().elements(), tol);
    CheckReport r;
    r.deviation = inv.deviation();
    r.tolerance = inv.tolerance;
    r.pass = inv.pass;
    return r;
  });
  suite.run("gns_transport", [&] {
    double dev = 0.0;
    double scale = 0.0;
    for (const auto& a : qg.algebra().elements()) {
      const FourierReport f = fourier_report(qg, a);
      dev = std::max(dev, f.deviation);
      scale = std::max(scale, f.gns_input.cwiseAbs().maxCoeff());
    }
    for (const auto& b : qg.dual_algebra().elements()) {
      const FourierReport f = inverse_fourier_report(qg, b);
      dev = std::max(dev, f.deviation);
      scale = std::max(scale, f.gns_input.cwiseAbs().maxCoeff());
    }
    return threshold(dev, tol, scale);
  });
  suite.run("plancherel", [&] {
    double dev = 0.0;
    double scale = 0.0;
    for (const auto& a : s.m) {
      const PlancherelValue p = plancherel(qg, a);
      dev = std::max({dev, p.deviation, std::abs(p.lhs.imag()), std::abs(p.rhs.imag())});
      if (p.lhs.real() < 0.0) dev = std::max(dev, -p.lhs.real());
      scale = std::max(scale, std::abs(p.rhs));
    }
    return threshold(dev, tol, scale);
  });
  suite.run("convolution_M", [&] {
    double dev = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < s.m.size(); ++i) {
      const ComplexMatrix f = convolve(qg, s.m[i], s.m2[i]);
      dev = std::max(dev, max_abs(f - convolve_direct(qg, s.m[i], s.m2[i])));
      scale = std::max(scale, max_abs(f));
    }
    return threshold(dev, tol, scale);
  });
  suite.run("convolution_Mhat", [&] {
    double dev = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < s.mhat.size(); ++i) {
      const ComplexMatrix f = convolve_dual(qg, s.mhat[i], s.mhat2[i]);
      dev = std::max(dev, max_abs(f - convolve_dual_direct(qg, s.mhat[i], s.mhat2[i])));
      scale = std::max(scale, max_abs(f));
    }
    return threshold(dev, tol, scale);
  });
  suite.run("pairing_spread", [&] {
    double dev = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < s.m.size(); ++i) {
      const PairingValue p = pairing(qg, s.mhat[i], s.m[i]);
      dev = std::max(dev, p.spread);
      scale = std::max(scale, std::abs(p.value()));
    }
    return threshold(dev, tol, scale);
  });

  std::optional<PairingAxiomsReport> axioms;
  const auto axiom = [&](CheckReport PairingAxiomsReport::*field) {
    if (!axioms) axioms = check_pairing_axioms(qg, s.pairing, tol);
    return (*axioms).*field;
  };
  suite.run("pairing_product", [&] { return axiom(&PairingAxiomsReport::product); });
  suite.run("pairing_coproduct", [&] { return axiom(&PairingAxiomsReport::coproduct); });
  suite.run("pairing_antipode", [&] { return axiom(&PairingAxiomsReport::antipode); });
  suite.run("ft_pairing", [&] {
    CheckReport worst;
    worst.pass = true;
    for (std::size_t i = 0; i < s.m.size(); ++i) {
      const CheckReport r = check_ft_pairing(qg, s.mhat[i], s.m[i], tol);
      if (r.deviation >= worst.deviation) worst.deviation = r.deviation;
      worst.tolerance = std::max(worst.tolerance, r.tolerance);
      worst.pass = worst.pass && r.pass;
    }
    return worst;
  });
}

void group_checks(Suite& suite, const GroupModel& model, const VerifyOptions& options) {
  const Tolerance& tol = options.tol;
  const QuantumGroupPair& qg = model.pair();
  Sampler sampler(options.seed ^ 0x9e3779b97f4a7c15ULL);
  const auto n = static_cast<Index>(model.order());
  std::vector<GroupFunction> a;
  std::vector<GroupFunction> b;
  for (int i = 0; i < options.samples; ++i) {
    a.push_back(sampler.vector(n));
    b.push_back(sampler.vector(n));
  }

  suite.run("group_fourier", [&] {
    double dev = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      dev = std::max(dev, max_abs(fourier(qg, model.pi(a[i])) - model.L(a[i])));
      dev = std::max(dev, max_abs(inverse_fourier(qg, model.L(b[i])) - model.pi(b[i])));
      scale = std::max({scale, a[i].cwiseAbs().maxCoeff(), b[i].cwiseAbs().maxCoeff()});
    }
    return threshold(dev, tol, scale);
  });
  suite.run("group_convolution", [&] {
    double dev = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const GroupFunction classical = model.classical_convolution(a[i], b[i]);
      const ComplexMatrix conv = convolve(qg, model.pi(a[i]), model.pi(b[i]));
      dev = std::max(dev, max_abs(conv - model.pi(classical)));
      const GroupFunction pointwise = a[i].cwiseProduct(b[i]);
      const ComplexMatrix dual = convolve_dual(qg, model.L(a[i]), model.L(b[i]));
      dev = std::max(dev, max_abs(dual - model.L(pointwise)));
      scale = std::max({scale, classical.cwiseAbs().maxCoeff(), pointwise.cwiseAbs().maxCoeff()});
    }
    return threshold(dev, tol, scale);
  });
  suite.run("group_pairing", [&] {
    double dev = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Complex expected = a[i].cwiseProduct(b[i]).sum();
      const PairingValue p = pairing(qg, model.L(b[i]), model.pi(a[i]));
      dev = std::max({dev, p.spread, std::abs(p.value() - expected)});
      scale = std::max(scale, std::abs(expected));
    }
    return threshold(dev, tol, scale);
  });
  suite.run("group_antipode_exact", [&] {
    // S(a)(x) = a(x⁻¹) and S² = id, both without rounding.
    double dev = 0.0;
    for (const auto& f : a) {
      GroupFunction inverted(n);
      for (Index x = 0; x < n; ++x) inverted(x) = f(static_cast<Index>(model.group().inv(static_cast<std::size_t>(x))));
      dev = std::max(dev, max_abs(qg.apply_antipode(model.pi(f)) - model.pi(inverted)));
    }
    const Eigen::MatrixXcd sq = qg.antipode().matrix * qg.antipode().matrix;
    const Eigen::MatrixXcd sq_hat = qg.dual_antipode().matrix * qg.dual_antipode().matrix;
    dev = std::max({dev, max_abs(sq - Eigen::MatrixXcd::Identity(sq.rows(), sq.cols())),
                    max_abs(sq_hat - Eigen::MatrixXcd::Identity(sq_hat.rows(), sq_hat.cols()))});
    CheckReport r;
    r.deviation = dev;
    r.tolerance = 0.0;
    r.pass = dev == 0.0;
    return r;
  });
  if (model.group().is_abelian()) {
    suite.run("group_dft", [&] {
      double dev = 0.0;
      double scale = 0.0;
      for (const auto& f : a) {
        const DftComparison d = dft_compare(model, f, tol);
        dev = std::max(dev, d.deviation);
        scale = std::max(scale, d.character_sums.cwiseAbs().maxCoeff());
      }
      return threshold(dev, tol, scale);
    });
  }
}

void pontryagin(Suite& suite, const QuantumGroupPair& qg, const Tolerance& tol) {
  suite.run("pontryagin", [&] {
    const PontryaginReport p = pontryagin_check(qg.unitary(), qg.algebra(), qg.dual_algebra(), tol);
    CheckReport r;
    r.deviation = p.deviation;
    r.tolerance = p.tolerance;
    r.pass = p.pass;
    return r;
  });
}

}  // namespace

VerificationReport verify_group(const FiniteGroup& group, const std::string& model,
                                const VerifyOptions& options) {
  Suite suite(model, options);
  const Tolerance& tol = options.tol;
  const GroupModel gm = GroupModel::build(group, tol);
  const QuantumGroupPair& qg = gm.pair();
  if (!preamble(suite, qg.unitary(), tol)) return suite.finish();
  algebra_checks(suite, qg, tol);
  const Samples s = draw(qg, options);
  structure_checks(suite, qg, s, tol);
  fourier_checks(suite, qg, s, tol);
  group_checks(suite, gm, options);
  pontryagin(suite, qg, tol);
  return suite.finish();
}

VerificationReport verify_unitary(const MultiplicativeUnitary& mu, const std::string& model,
                                  const VerifyOptions& options) {
  Suite suite(model, options);
  const Tolerance& tol = options.tol;
  if (!preamble(suite, mu, tol)) return suite.finish();
  std::optional<QuantumGroupPair> qg;
  const bool assembled = suite.run("haar_weights", [&] {
    qg = QuantumGroupPair::from_unitary(mu, tol);
    return threshold(std::max(qg->antipode().residual, qg->dual_antipode().residual), tol, 1.0);
  });
  if (!assembled) return suite.finish();
  algebra_checks(suite, *qg, tol);
  const Samples s = draw(*qg, options);
  structure_checks(suite, *qg, s, tol);
  fourier_checks(suite, *qg, s, tol);
  pontryagin(suite, *qg, tol);
  return suite.finish();
}

Json report_to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json item{{"name", c.name},
              {"pass", c.pass},
              {"deviation", c.deviation},
              {"tolerance", c.tolerance},
              {"elapsed_ms", c.elapsed_ms}};
    if (!c.message.empty()) item["message"] = c.message;
    checks.push_back(std::move(item));
  }
  return Json{{"model", report.model},
              {"seed", report.seed},
              {"suite_version", report.suite_version},
              {"pass", report.pass()},
              {"checks", std::move(checks)}};
}

}  // namespace qgft

// qgft: verification suite and transforms for finite quantum groups.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qgft/fourier.hpp"
#include "qgft/group_model.hpp"
#include "qgft/io.hpp"
#include "qgft/verify.hpp"

namespace {

using namespace qgft;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

struct Common {
  std::string group;
  double tol = 1e-10;
  std::string out;

  Tolerance tolerance() const { return Tolerance{tol, tol}; }
};

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(out, j);
  }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

GroupFunction load_function(const std::string& path, const GroupModel& model) {
  GroupFunction f = function_from_json(read_json_file(path));
  if (f.size() != static_cast<Index>(model.order())) {
    throw DimensionMismatch(path + ": function has " + std::to_string(f.size()) +
                            " values, group order is " + std::to_string(model.order()));
  }
  return f;
}

int report_failure(const VerificationReport& report) {
  if (const CheckResult* bad = report.first_failure()) {
    std::cerr << "FAIL: check '" << bad->name << "' failed (deviation " << bad->deviation
              << ", tolerance " << bad->tolerance << ")";
    if (!bad->message.empty()) std::cerr << ": " << bad->message;
    std::cerr << '\n';
    return kExitCheckFailed;
  }
  std::cerr << "OK: " << report.checks.size() << " checks passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional quantum group Fourier engine"};
  app.require_subcommand(1);

  Common common;
  const auto add_common = [&](CLI::App* cmd, bool group_required) {
    auto* opt = cmd->add_option("--group", common.group,
                                "cyclic:<n>, dihedral:<m>, symmetric:<k>, s3, s4, "
                                "product:<spec>x<spec>, or a Cayley table file");
    if (group_required) opt->required();
    cmd->add_option("--tol", common.tol, "absolute and relative tolerance")->capture_default_str();
    cmd->add_option("--out", common.out, "write JSON here instead of stdout");
  };

  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  add_common(verify, false);
  std::string unitary_path;
  std::uint64_t seed = kDefaultSeed;
  int samples = 4;
  bool no_timing = false;
  auto* unitary_opt = verify->add_option("--unitary", unitary_path, "dense W as {n, re, im} JSON");
  verify->get_option("--group")->excludes(unitary_opt);
  verify->add_option("--seed", seed, "seed for sampled checks")->capture_default_str();
  verify->add_option("--samples", samples, "samples per sampled check")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_flag("--no-timing", no_timing, "report elapsed_ms as 0 for reproducible output");

  auto* fourier_cmd = app.add_subcommand("fourier", "F(π_a), or F⁻¹(L_b) with --inverse");
  add_common(fourier_cmd, true);
  std::string function_path;
  bool inverse = false;
  fourier_cmd->add_option("--function", function_path, "function JSON {values: [[re, im], ...]}")->required();
  fourier_cmd->add_flag("--inverse", inverse, "treat the function as coefficients of L_b");

  auto* convolve_cmd = app.add_subcommand("convolve", "convolution by both routes");
  add_common(convolve_cmd, true);
  std::string a_path;
  std::string c_path;
  bool dual = false;
  convolve_cmd->add_option("--a", a_path, "first function")->required();
  convolve_cmd->add_option("--c", c_path, "second function")->required();
  convolve_cmd->add_flag("--dual", dual, "convolve on the dual side (L_a, L_c)");

  auto* pair_cmd = app.add_subcommand("pair", "dual pairing ⟨L_b|π_a⟩ by all routes");
  add_common(pair_cmd, true);
  std::string b_path;
  pair_cmd->add_option("--a", a_path, "function a for π_a")->required();
  pair_cmd->add_option("--b", b_path, "function b for L_b")->required();

  auto* dft_cmd = app.add_subcommand("dft-compare", "character-basis diagonal of F(π_a), abelian groups");
  add_common(dft_cmd, true);
  dft_cmd->add_option("--function", function_path, "function JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitBadInput;
  }

  const Tolerance tol = common.tolerance();

  if (verify->parsed()) {
    if (common.group.empty() == unitary_path.empty()) {
      std::cerr << "error: verify needs exactly one of --group or --unitary\n";
      return kExitBadInput;
    }
    VerifyOptions options;
    options.tol = tol;
    options.seed = seed;
    options.samples = samples;
    options.timing = !no_timing;
    VerificationReport report;
    try {
      if (!common.group.empty()) {
        const FiniteGroup g = parse_group_spec(common.group);
        report = verify_group(g, common.group, options);
      } else {
        const MultiplicativeUnitary mu = unitary_from_json(read_json_file(unitary_path));
        report = verify_unitary(mu, unitary_path, options);
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitBadInput;
    }
    try {
      emit(report_to_json(report), common.out);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitBadInput;
    }
    return report_failure(report);
  }

  std::optional<GroupModel> model;
  try {
    model = GroupModel::build(parse_group_spec(common.group), tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  const QuantumGroupPair& qg = model->pair();

  try {
    if (fourier_cmd->parsed()) {
      const GroupFunction f = load_function(function_path, *model);
      Json out;
      if (inverse) {
        const ComplexMatrix x = inverse_fourier(qg, model->L(f));
        out["matrix"] = matrix_to_json(x);
        out["diagonal"] = function_to_json(model->from_pi(x));
      } else {
        const ComplexMatrix y = fourier(qg, model->pi(f));
        out["matrix"] = matrix_to_json(y);
        out["coefficients"] = function_to_json(model->from_L(y));
      }
      emit(out, common.out);
      return kExitOk;
    }

    if (convolve_cmd->parsed()) {
      const GroupFunction a = load_function(a_path, *model);
      const GroupFunction c = load_function(c_path, *model);
      ComplexMatrix via_fourier;
      ComplexMatrix direct;
      GroupFunction values;
      if (dual) {
        via_fourier = convolve_dual(qg, model->L(a), model->L(c));
        direct = convolve_dual_direct(qg, model->L(a), model->L(c));
        values = model->from_L(via_fourier);
      } else {
        via_fourier = convolve(qg, model->pi(a), model->pi(c));
        direct = convolve_direct(qg, model->pi(a), model->pi(c));
        values = model->from_pi(via_fourier);
      }
      const double disagreement = max_abs(via_fourier - direct);
      Json out = function_to_json(values);
      out["route_deviation"] = disagreement;
      emit(out, common.out);
      if (!tol.admits(disagreement, max_abs(via_fourier))) {
        std::cerr << "FAIL: convolution routes disagree by " << disagreement << '\n';
        return kExitCheckFailed;
      }
      return kExitOk;
    }

    if (pair_cmd->parsed()) {
      const GroupFunction a = load_function(a_path, *model);
      const GroupFunction b = load_function(b_path, *model);
      const PairingValue p = pairing(qg, model->L(b), model->pi(a));
      const Complex classical = a.cwiseProduct(b).sum();
      Json out{{"via_inverse", complex_json(p.via_inverse)},
               {"via_forward", complex_json(p.via_forward)},
               {"via_unitary", complex_json(p.via_unitary)},
               {"classical", complex_json(classical)},
               {"spread", p.spread}};
      emit(out, common.out);
      return kExitOk;
    }

    if (dft_cmd->parsed()) {
      if (!model->group().is_abelian()) {
        std::cerr << "error: NonAbelianInput: dft-compare needs an abelian group\n";
        return kExitBadInput;
      }
      const GroupFunction f = load_function(function_path, *model);
      const DftComparison d = dft_compare(*model, f, tol);
      Json out = {{"diagonal", function_to_json(d.diagonal)["values"]},
                  {"character_sums", function_to_json(d.character_sums)["values"]},
                  {"off_diagonal", d.off_diagonal},
                  {"deviation", d.deviation},
                  {"pass", d.pass}};
      emit(out, common.out);
      return d.pass ? kExitOk : kExitCheckFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}

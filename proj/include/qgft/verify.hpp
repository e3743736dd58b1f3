#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgft/group.hpp"
#include "qgft/io.hpp"
#include "qgft/unitary.hpp"

namespace qgft {

inline constexpr std::uint64_t kDefaultSeed = 20240613;
inline constexpr const char* kSuiteVersion = "1.0";

struct CheckResult {
  std::string name;
  bool pass = false;
  double deviation = 0.0;
  double tolerance = 0.0;
  double elapsed_ms = 0.0;
  /// Set when the check could not be evaluated.
  std::string message;
};

struct VerificationReport {
  std::string model;
  std::uint64_t seed = kDefaultSeed;
  std::string suite_version = kSuiteVersion;
  std::vector<CheckResult> checks;

  bool pass() const;
  /// The first failing check in execution order, or nullptr.
  const CheckResult* first_failure() const;
  const CheckResult* find(const std::string& name) const;
};

struct VerifyOptions {
  Tolerance tol;
  std::uint64_t seed = kDefaultSeed;
  /// When false every elapsed_ms is 0, making reports byte-reproducible.
  bool timing = true;
  /// Random samples per sampled check.
  int samples = 4;
};

/// Full suite on the structured model of a finite group, including the
/// classical comparisons (π/L, convolution, pairing, DFT when abelian).
VerificationReport verify_group(const FiniteGroup& group, const std::string& model,
                                const VerifyOptions& options = {});

/// Full suite on a dense W; Haar vectors are discovered from W. Stops after
/// a failed pentagon check, or when the pair cannot be assembled.
VerificationReport verify_unitary(const MultiplicativeUnitary& mu, const std::string& model,
                                  const VerifyOptions& options = {});

Json report_to_json(const VerificationReport& report);

}  // namespace qgft

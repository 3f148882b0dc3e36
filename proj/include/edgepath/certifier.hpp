#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edgepath/io.hpp"
#include "edgepath/pp_formula.hpp"

namespace edgepath {

inline constexpr int kCertificateSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

enum class Status { pass, fail, skipped };
std::string to_string(Status s);

struct Hypothesis {
  std::string name;
  Status status = Status::skipped;
  std::string detail;
  json witness = json::object();
};

/// Box faces, or explicit maximal faces (tuple indices) for both sides.
struct FaceSpec {
  bool box = true;
  std::vector<VertexSet> faces_a;
  std::vector<VertexSet> faces_b;

  /// Accepts {"A": [[...]...], "B": [[...]...]}.
  static FaceSpec from_json(const json& j);
};

/// Cyclic shift, or custom permutations given as JSON objects {"order", "permutation"}.
struct MuSpec {
  bool shift = true;
  json custom_a;
  json custom_b;

  /// Accepts {"A": {...}, "B": {...}}.
  static MuSpec from_json(const json& j);
};

struct CertifyOptions {
  std::size_t power_cap = kDefaultPowerCap;
  std::size_t tolerance_cap = kDefaultToleranceCap;
  /// Polymorphisms up to this arity are enumerated for (M2), stability and ξ checks.
  std::size_t poly_max_arity = 2;
  /// Arities whose polymorphism count exceeds this are dropped from the checks.
  std::size_t poly_count_cap = 20'000;
  unsigned threads = 1;
  /// Build the μ-cycle from the prime-order power of μ.
  bool prime_order = true;
};

struct CertifyInput {
  RelationalStructure a;
  RelationalStructure b;
  std::string pp;
  FaceSpec faces;
  MuSpec mu;
};

struct HardnessCertificate {
  std::string template_a;
  std::string template_b;
  std::string pp;
  std::string face_mode;
  std::string mu_mode;
  std::vector<Hypothesis> hypotheses;
  bool np_hard = false;
  json extra = json::object();  // relation sizes, free group data, caps

  const Hypothesis* find(std::string_view name) const;
  std::vector<std::string> failing() const;
  std::string verdict() const { return np_hard ? "NP-hard" : "NOT CERTIFIED"; }
  json to_json() const;
  std::string to_text() const;
};

/// Stage names in certificate order.
const std::vector<std::string>& hypothesis_names();

HardnessCertificate certify(const CertifyInput& input, const CertifyOptions& options = {});

/// Re-derives the recorded witnesses through the public operations and re-runs
/// certification; returns one line per mismatch, empty when all agree.
std::vector<std::string> replay(const json& certificate, const CertifyInput& input,
                                const CertifyOptions& options = {});

struct SuiteCase {
  std::string name;
  std::string a_file;
  std::string b_file;
  std::string pp;
  bool expect_np_hard = true;
  /// Hypotheses expected to fail for a negative control; at least one must.
  std::vector<std::string> expected_failures;
  /// For claimed NP-hard cases that this method cannot certify: the exact set of
  /// failing hypotheses that was analysed. Empty when no deviation is known.
  std::vector<std::string> known_deviation;
};

enum class CaseStatus { reproduced, deviation, mismatch };
std::string to_string(CaseStatus s);

const std::vector<SuiteCase>& application_suite_cases();

struct SuiteResult {
  SuiteCase entry;
  HardnessCertificate certificate;
  CaseStatus status = CaseStatus::mismatch;
  bool ok() const { return status != CaseStatus::mismatch; }
  std::string note;
  double seconds = 0;
};

struct SuiteReport {
  std::vector<SuiteResult> results;
  double seconds = 0;
  /// No mismatches; documented deviations are listed but do not fail the run.
  bool ok() const;
  std::size_t count(CaseStatus s) const;
  json to_json() const;
  std::string to_text() const;
};

SuiteReport run_application_suite(const std::filesystem::path& corpus_dir,
                            const CertifyOptions& options = {});

}  // namespace edgepath

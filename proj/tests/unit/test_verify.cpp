#include <doctest.h>

#include "elliptic_oam/verify.hpp"

using namespace elliptic_oam;

TEST_SUITE("verify") {

TEST_CASE("fast suite passes with enough checks") {
  const VerifyReport report = run_verification();
  CHECK(report.passed());
  CHECK(report.gating_count() >= 20);
  for (const auto& c : report.checks) {
    if (c.gating) CHECK_MESSAGE(c.passed, c.name, " measured ", c.measured);
  }
  const std::string text = report.to_text();
  CHECK(text.find("verify: ok") != std::string::npos);
  CHECK(text.find("sqrt(1 + eps^2)") != std::string::npos);
}

TEST_CASE("a corrupted decomposition sign is caught") {
  VerifyOptions options;
  options.decomposer = [](const ModeIndex& mode, double eps) {
    Decomposition d = decompose(mode, eps);
    for (auto& t : d.terms) {
      if (t.index.n % 2 == 1) t.weight = -t.weight;
    }
    return d;
  };
  const VerifyReport report = run_verification(options);
  CHECK_FALSE(report.passed());
  bool overlap_failed = false;
  for (const auto& c : report.checks) {
    if (c.name == "decomposition.overlap_quadrature") overlap_failed = !c.passed;
  }
  CHECK(overlap_failed);
}

TEST_CASE("full suite passes") {
  VerifyOptions options;
  options.level = VerifyLevel::full;
  const VerifyReport report = run_verification(options);
  CHECK(report.passed());
  CHECK(report.to_text().find("p <= 12") != std::string::npos);
}

}

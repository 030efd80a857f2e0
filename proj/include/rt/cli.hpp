#pragma once

#include <optional>
#include <string>

#include "rt/invariants.hpp"

namespace rt {

// A manifold description parsed from a strict JSON document.  Lens spaces
// carry (p, q); Seifert data reuse the library presentation plus an
// optional Frobenius-Schur indicator table.  Unknown or inapplicable
// fields are rejected by name.
struct ManifoldSpec {
  enum class Kind { Lens, Seifert };
  Kind kind = Kind::Lens;
  long long p = 0;
  long long q = 0;
  SeifertPresentation seifert;
  std::optional<IndicatorTable> indicators;
};

ManifoldSpec parse_manifold(const std::string& text);

// Shared run options resolved from flags (threads may also come from the
// RTINV_THREADS environment variable; an explicit flag wins).
struct RunConfig {
  char family = 'A';
  int rank = 1;
  long long kappa = 0;
  std::string method = "all";
  double tolerance = 1e-9;
  bool deterministic = false;  // zero timing fields for stable output
  int threads = 0;             // 0: keep the library default
  std::string output = "json";
};

// One evaluation rendered in the configured mode: a JSON object with the
// value and metadata, or a one-row CSV document with header
// "kappa,re,im,method".  Floating-point fields carry 15 significant
// digits.
std::string format_result(const InvariantResult& res, const RunConfig& cfg);

// Entry point behind the binary.  Exit codes: 0 success, 2 malformed
// input, 3 precondition failure, 4 cost-guard refusal, 5 self-test
// residual above tolerance, 1 internal error.
int run_command(int argc, const char* const* argv);

}  // namespace rt

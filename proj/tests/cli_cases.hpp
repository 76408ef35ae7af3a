#ifndef TRILIE_TEST_CLI_CASES_HPP
#define TRILIE_TEST_CLI_CASES_HPP

// CLI invocations over the bundled corpus with their expected exit codes.
// Arguments ending in ".json" are corpus file names.

#include <string>
#include <vector>

struct CliCase {
  std::vector<std::string> args;
  int code;
};

inline const std::vector<CliCase>& cli_cases() {
  static const std::vector<CliCase> cases = {
      {{"validate", "example25.pair.json"}, 0},
      {{"validate", "noncompatible.pair.json"}, 1},
      {{"validate", "fi_violating.algebra.json"}, 1},
      {{"validate", "example25_bracket1.algebra.json"}, 0},
      {{"validate", "example25.pair.json", "--grid", "fuzz", "--seed", "7"}, 0},
      {{"validate", "example25.pair.json", "--coeffs", "example25.subadjoint.rep.json"}, 0},
      {{"validate", "example25.pair.json", "--coeffs", "example25.coadjoint.rep.json"}, 0},
      {{"validate", "example25_bracket1.algebra.json", "--coeffs", "example25_bracket1.adjoint.rep.json"}, 0},
      {{"cohomology", "example25.pair.json", "--degree", "3"}, 0},
      {{"cohomology", "example25.pair.json", "--adjoint"}, 0},
      {{"cohomology", "example25.pair.json", "--coeffs", "example25.subadjoint.rep.json"}, 0},
      {{"cohomology", "example25_bracket1.algebra.json", "--adjoint", "--degree", "3"}, 0},
      {{"cohomology", "abelian3.pair.json", "--raw-complex"}, 0},
      {{"derivations", "example25.pair.json"}, 0},
      {{"derivations", "example25_bracket1.algebra.json"}, 0},
      {{"mc-check", "example25.pair.json"}, 0},
      {{"mc-check", "noncompatible.pair.json"}, 1},
      {{"deform-check", "example25.pair.json", "example25.deform.cocycle.json"}, 0},
      {{"deform-check", "example25.pair.json", "example25.deform.noncocycle.json"}, 1},
      {{"deform-equivalent", "example25.pair.json", "example25.deform.cocycle.json", "example25.deform.shifted.json"}, 0},
      {{"deform-equivalent", "example25.pair.json", "example25.deform.cocycle.json", "example25.deform.class.json"}, 1},
      {{"nijenhuis", "example25.pair.json", "example25.nijenhuis.json"}, 0},
      {{"nijenhuis", "example25.pair.json", "example25.nonnijenhuis.json"}, 1},
      {{"nijenhuis", "abelian3.pair.json", "abelian3.nijenhuis.json"}, 0},
      {{"deform-order2", "example25.pair.json", "example25.deform.order2.json"}, 0},
      {{"extension-build", "example25.ext.semidirect.json"}, 0},
      {{"extension-build", "example25.ext.coboundary.json"}, 0},
      {{"extension-build", "example25.ext.noncocycle.json"}, 1},
      {{"extension-build", "abelian3.ext.nonzero.json"}, 0},
      {{"extension-extract", "example25.ext.coboundary.json"}, 0},
      {{"extension-extract", "example25.ext.coboundary.json", "--section", "example25.section.json"}, 0},
      {{"extension-classify", "example25.ext.semidirect.json", "example25.ext.coboundary.json"}, 0},
      {{"extension-classify", "abelian3.ext.zero.json", "abelian3.ext.nonzero.json"}, 1},
      {{"selftest"}, 0},
      {{"validate", "missing.json"}, 2},
      {{"frobnicate", "example25.pair.json"}, 2},
      {{"deform-check", "example25.pair.json"}, 2},
      {{"validate", "example25.pair.json", "--grid", "dense"}, 2},
  };
  return cases;
}

inline std::string corpus_arg(const std::string& dir, const std::string& a) {
  if (a.size() > 5 && a.compare(a.size() - 5, 5, ".json") == 0) return dir + "/" + a;
  return a;
}

#endif  // TRILIE_TEST_CLI_CASES_HPP

#pragma once

#include <string>
#include <vector>

#include "cvdisc/gaussian.hpp"

namespace cvdisc {

enum class ValidationScale { Quick, Full };

struct SuiteResult {
  std::string name;
  bool passed = false;
  Real max_deviation = 0;
  Real tolerance = 0;
  long cases = 0;
  std::string detail;  // first failure, if any
};

// Oracle-equivalence and invariant suites. Quick covers m <= 4, full m <= 6
// and adds the mutual-probing checks. Deterministic (fixed seeds).
std::vector<SuiteResult> run_validation(ValidationScale scale);

// Individual suites, exposed for tests and the acceptance binary.
SuiteResult validate_bona_fide(int max_m);
SuiteResult validate_ghz_spectrum();
SuiteResult validate_fidelity_symmetry_range(int samples);
SuiteResult validate_purity();
SuiteResult validate_ghz_degeneracy(int max_m);
SuiteResult validate_block_degeneracy(int max_m);
SuiteResult validate_multiplicativity(int max_m);
SuiteResult validate_monotonicity(int max_m);
SuiteResult validate_counting(int max_m);
SuiteResult validate_mutual(int max_m);
SuiteResult validate_oracles();
SuiteResult validate_classical();

}  // namespace cvdisc

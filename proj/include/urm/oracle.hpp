#pragma once

#include <optional>
#include <vector>

#include "urm/protocol.hpp"

namespace urm {

struct SupportEntry {
  ControlOutcome outcome;
  double probability;
};

// The quantum support of one control measurement, found by direct amplitude
// computation only: every outcome whose Born probability exceeds
// kSupportThreshold. No modular inference is consulted here.
struct SupportSet {
  MesLabel prepared;
  std::optional<UrmRecord> urm;  // nullopt: control on the untouched state
  MesFamily family;
  std::vector<SupportEntry> outcomes;  // sorted by (mdd', m0')
  double total_probability = 0.0;      // over all d^2 outcomes, ~1
};

SupportSet enumerate_support(int d, const MesLabel& prepared,
                             const std::optional<UrmRecord>& urm, MesFamily family);
SupportSet enumerate_support(const MesLabel& prepared, const std::optional<UrmRecord>& urm,
                             const GammaBasis& basis);

// Residual 1 - |overlap| between the simulated normalized post-URM state and
// the closed-form product |m;b>_1 |-m''; -b>_2 with
// m'' = 2*(m0 + b*mdd - b*half) - m. Exact up to rounding when the closed
// form is right; order 1 when it is not.
double check_post_state_form(int d, const MesLabel& prepared, FieldElem b, FieldElem m);

struct CrossValidationReport {
  int d = 0;
  long cases_total = 0;
  long support_mismatches = 0;       // quantum support != modular prediction (label sets)
  long inference_disagreements = 0;  // exact inference wrong on a support outcome
  double max_probability_residual = 0.0;
  double elapsed_ms = 0.0;

  long mismatches() const { return support_mismatches + inference_disagreements; }
};

// For every (prepared, basis, outcome, family): the amplitude-enumerated
// support must equal the modular prediction exactly as a label set, and the
// exact inference must agree with the hidden record on every support outcome.
CrossValidationReport cross_validate(int d);

}  // namespace urm

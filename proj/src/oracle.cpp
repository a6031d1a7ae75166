#include "urm/oracle.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace urm {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

SupportSet enumerate_support(const MesLabel& prepared, const std::optional<UrmRecord>& urm,
                             const GammaBasis& basis) {
  const int d = basis.dim();
  Vector state = mes_state(d, prepared);
  if (urm) {
    const Projection proj = project_particle1(state, mub_vector(d, {urm->basis, urm->m}));
    if (proj.probability < kSupportThreshold) {
      throw std::domain_error("enumerate_support: impossible outcome requested");
    }
    state = proj.state / std::sqrt(proj.probability);
  }
  const RealVector probs = (basis.vectors().adjoint() * state).cwiseAbs2();

  SupportSet support{prepared, urm, basis.family(), {}, probs.sum()};
  for (Eigen::Index col = 0; col < probs.size(); ++col) {
    if (probs[col] <= kSupportThreshold) continue;
    const MesLabel label = basis.label(static_cast<int>(col));
    support.outcomes.push_back(
        {ControlOutcome{basis.family(), label.mdd, label.m0}, probs[col]});
  }
  return support;
}

SupportSet enumerate_support(int d, const MesLabel& prepared,
                             const std::optional<UrmRecord>& urm, MesFamily family) {
  return enumerate_support(prepared, urm, GammaBasis(d, family));
}

double check_post_state_form(int d, const MesLabel& prepared, FieldElem b, FieldElem m) {
  if (prepared.family != MesFamily::A) {
    throw std::invalid_argument("check_post_state_form: requires a family-A preparation");
  }
  const PrimeModulus mod(d);
  const UrmRun run = run_urm(d, prepared, {BasisLabel::shifted(b), m});

  const FieldElem two(2, mod);
  const FieldElem mpp = two * (prepared.m0 + b * prepared.mdd - b * half(mod)) - m;
  const Vector closed = tensor(mub_vector(d, {BasisLabel::shifted(b), m}),
                               mub_vector(d, {BasisLabel::shifted(-b), -mpp}));
  return 1.0 - std::abs(inner(run.post_state, closed));
}

CrossValidationReport cross_validate(int d) {
  const auto start = Clock::now();
  const PrimeModulus mod(d);
  const GammaBasis gamma_a(d, MesFamily::A);
  const GammaBasis gamma_b(d, MesFamily::B);

  CrossValidationReport report;
  report.d = d;

  for (int mdd = 0; mdd < d; ++mdd) {
    for (int m0 = 0; m0 < d; ++m0) {
      const MesLabel prepared{MesFamily::A, FieldElem(mdd, mod), FieldElem(m0, mod)};
      for (const BasisLabel& b : all_bases(d)) {
        for (int m = 0; m < d; ++m) {
          const UrmRecord hidden{b, FieldElem(m, mod)};
          for (const GammaBasis* gamma : {&gamma_a, &gamma_b}) {
            ++report.cases_total;
            const SupportSet quantum = enumerate_support(prepared, hidden, *gamma);
            const auto predicted = predicted_support(d, prepared, hidden, gamma->family());

            // Exact label-set comparison; both sides sorted by (mdd', m0').
            bool sets_equal = quantum.outcomes.size() == predicted.size();
            for (std::size_t k = 0; sets_equal && k < predicted.size(); ++k) {
              sets_equal = quantum.outcomes[k].outcome == predicted[k];
            }
            if (!sets_equal) ++report.support_mismatches;

            report.max_probability_residual = std::max(
                report.max_probability_residual, std::abs(quantum.total_probability - 1.0));
            for (const SupportEntry& entry : quantum.outcomes) {
              report.max_probability_residual =
                  std::max(report.max_probability_residual,
                           std::abs(entry.probability - 1.0 / d));

              if (gamma->family() == MesFamily::A) {
                const InferenceResult verdict = infer_basis(prepared, entry.outcome);
                const bool at_prepared_label = entry.outcome.mdd_p == prepared.mdd &&
                                               entry.outcome.m0_p == prepared.m0;
                if (verdict.is_undetermined()) {
                  if (!at_prepared_label) ++report.inference_disagreements;
                } else if (!(*verdict.as_basis() == hidden.basis)) {
                  ++report.inference_disagreements;
                }
              } else if (!b.is_computational()) {
                if (!(infer_outcome(prepared, entry.outcome, b) == hidden.m)) {
                  ++report.inference_disagreements;
                }
              }
            }
          }
        }
      }
    }
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

}  // namespace urm

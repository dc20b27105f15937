#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mgefst/monoid.hpp"

namespace mgefst {

/// Sampling bounds for the randomized law checks. Small bounds are
/// deliberate: they maximise collisions in the divisibility order.
struct SampleConfig {
  std::uint64_t seed = 1;
  int count = 1000;
  int max_word_len = 5;
  int max_numerator = 12;
  int max_denominator = 12;
};

enum class Axiom {
  LC,
  RC,
  RMGE,
  LSL,
  GCLF,
  ASSOC,
  UNIT,
  MGE_SOUND,
  EQ_PARTITION,
  INF_DISTRIB,
  LP_PROBE,
};

std::string axiom_name(Axiom axiom);

/// One verdict per law. A failing report carries the sampled elements
/// that produced it; replaying them through recheck() reproduces the
/// failure.
struct AxiomReport {
  Axiom axiom = Axiom::LC;
  bool pass = true;
  long trials = 0;
  std::vector<Element> counterexample;

  /// `<AXIOM> <pass|fail> <trials> [counterexample-literals]`
  std::string to_line() const;
};

/// Runs all eleven checks on the given instance. Deterministic for a
/// fixed config. On tiny universes (all elements within the bounds fit
/// in the trial budget cubed) the checks run over every triple instead
/// of sampling. Failures are data, not errors.
std::vector<AxiomReport> run_axiom_suite(const MonoidDescriptor& d,
                                         const SampleConfig& cfg);

/// Replays a report's counterexample through the raw operations.
/// Returns true when the law holds on it; a genuine failure report
/// yields false.
bool recheck(const AxiomReport& report);

/// Bounded evidence about one candidate equalising sequence.
struct ProbeReport {
  enum class Status { EqualisingPrefix, NotAnEqualisingSequence };

  Status status = Status::EqualisingPrefix;
  std::size_t failing_index = 0;  // first n with u.a_{n+1} != v.a_n
  bool le_holds = false;          // le(u, v), the limit-prefix conclusion
  bool unit_le_terms = false;     // le(e, a_n) for every term

  std::string to_line() const;
};

/// Checks op(u, a_{n+1}) = op(v, a_n) for all n < N over the finite
/// sequence a_0..a_N. When every equation holds, reports whether the
/// limit-prefix conclusions le(u, v) and le(e, a_n) hold on this
/// bounded evidence; otherwise reports the first failing index.
ProbeReport lp_probe(const Element& u, const Element& v,
                     std::span<const Element> sequence);

}  // namespace mgefst

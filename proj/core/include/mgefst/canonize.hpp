#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mgefst/transducer.hpp"
#include "mgefst/witness.hpp"

namespace mgefst {

/// Pushes outputs towards the start so that every state's set of
/// suffix outputs has the unit as an infimum, keeping the state set and
/// transition skeleton. The input is trimmed first. Throws
/// NonConvergenceError if the per-state push fixpoint does not stabilise
/// within its round cap.
SubseqTransducer onward(const SubseqTransducer& t);

/// Trims, pushes outputs, then merges states by partition refinement
/// over exact labels. The result evaluates identically, has no two
/// states with equal behaviour, and is a fixpoint of minimize up to
/// isomorphism.
SubseqTransducer minimize(const SubseqTransducer& t);

/// Outcome of an equivalence check between two machines.
struct EquivalenceResult {
  enum class Kind { Equal, ValueDiff, DomainDiff, LabelDiff };

  bool equivalent = false;
  Kind kind = Kind::Equal;
  std::string word;                  // separating word (ValueDiff/DomainDiff)
  std::optional<Element> lhs, rhs;   // the two values on `word`
  std::string detail;                // LabelDiff description

  /// `EQUIVALENT`, `DIFF <word> <el> <el>`, `DIFF-DOMAIN <word>`, or
  /// `DIFF-LABELS <detail>`.
  std::string to_line() const;
};

/// Minimizes both machines and compares them up to isomorphism. On
/// mismatch searches for a separating word up to `depth` letters via a
/// synchronized product walk; falls back to a label-level mismatch
/// report when none is found within the bound.
EquivalenceResult equivalent(const SubseqTransducer& a,
                             const SubseqTransducer& b, int depth);

/// For a complete machine: if alpha and beta reach the same state p,
/// returns the triple with u, v the accumulated outputs on alpha, beta
/// and s sampled from p over all suffixes of length <= 2*|Q|. Returns
/// nullopt when the reached states differ (no certificate from this
/// machine; the words may still be related semantically).
std::optional<WitnessTriple> witness_from_transducer(const SubseqTransducer& t,
                                                     std::string_view alpha,
                                                     std::string_view beta);

}  // namespace mgefst

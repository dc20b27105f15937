#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgefst/oracle.hpp"
#include "mgefst/transducer.hpp"
#include "mgefst/witness.hpp"

namespace mgefst {

/// All words over `alphabet` of length <= max_len, shortest first,
/// alphabet order within a length. The canonical suffix enumeration used
/// by the bounded equivalence test.
std::vector<std::string> enumerate_words(const std::string& alphabet,
                                         int max_len);

/// Outcome of the bounded word-equivalence test.
struct EquivWordsResult {
  enum class Mismatch { None, Domain, Value };

  /// Engaged iff the words were indistinguishable on every suffix up to
  /// the depth; carries u, v and the sampled shared suffix map.
  std::optional<WitnessTriple> witness;
  Mismatch mismatch = Mismatch::None;
  std::string separator;  // a separating suffix when not equivalent

  bool equivalent() const { return witness.has_value(); }
};

/// Tests alpha and beta against the oracle over every suffix z with
/// |z| <= depth: the residual domains must agree, and with u, v the
/// meet-folds of the two residual output sets, the quotients
/// f(alpha z)/u and f(beta z)/v must coincide for every defined z.
/// Empty residual domains are equivalent with unit witnesses.
EquivWordsResult equiv_words(const FunctionOracle& f, std::string_view alpha,
                             std::string_view beta, int depth);

/// Per-class data of a computed partition.
struct ClassInfo {
  std::string rep;                   // shortest member, ties lexicographic
  std::vector<std::string> members;  // classified words in this class
  bool live = false;                 // residual domain non-empty (sampled)
  bool accepts = false;              // rep itself lies in dom(f)
  std::map<std::string, Element> v;  // v(.) on the stored member subset
  Element m_factor;                  // M_j; unit for dead classes
  std::map<std::string, Element> s;  // sampled shared suffix map s_j
};

/// Partition of the words of length <= 2*n_bound-1 into equivalence
/// classes, together with everything the machine construction needs.
struct ClassTable {
  MonoidDescriptor descriptor = MonoidDescriptor::tropical();
  std::string alphabet;
  int n_bound = 0;
  int depth = 0;
  bool members_truncated = false;
  std::vector<ClassInfo> classes;           // index 0 = class of the empty word
  std::vector<std::vector<int>> class_dfa;  // [class][letter index] -> class

  int letter_index(char c) const;
  int class_of(std::string_view word) const;
};

/// Classifies all words of length <= 2*n_bound-1 against the oracle and
/// assembles representatives, v-values, the per-class M factors, and the
/// sampled suffix maps. Throws IndexExceededError with a certificate of
/// n_bound+1 pairwise-inequivalent words when the bound is too small;
/// an empty-domain oracle yields the single-class table.
ClassTable build_class_table(const FunctionOracle& f, int n_bound, int depth);

/// Builds the complete machine with one state per class: transitions
/// follow the class partition, outputs come from the v/M factors, and
/// final outputs from the sampled suffix maps. Throws
/// QuotientFailureError when a required quotient is undefined (depth too
/// small or oracle outside the supported function class).
SubseqTransducer construct_minimal(const FunctionOracle& f, int n_bound,
                                   int depth);
SubseqTransducer construct_minimal(const ClassTable& table);

}  // namespace mgefst

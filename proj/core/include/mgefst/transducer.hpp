#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mgefst/monoid.hpp"

namespace mgefst {

/// A deterministic one-letter transducer with initial output, one output
/// per transition, and one output per final state. Determinism is
/// structural: `transitions` maps (state, letter) to at most one
/// (output, target). States are dense integers 0..num_states-1.
/// Machines are immutable after construction; evaluation is pure.
struct SubseqTransducer {
  MonoidDescriptor descriptor = MonoidDescriptor::tropical();
  std::string alphabet;
  int num_states = 0;
  int start = 0;
  Element init_out;                                   // iota
  std::map<int, Element> finals;                      // Psi
  std::map<std::pair<int, char>, std::pair<Element, int>> transitions;

  /// Checks the structural invariants; throws on violation.
  void validate() const;

  bool is_complete() const;
  bool has_letter(char c) const;

  /// Adds a transition src --c/out--> dst, replacing any existing one.
  void add_transition(int src, char c, Element out, int dst);
  void set_final(int state, Element out);
};

/// An empty machine over the given descriptor and alphabet: one start
/// state, no finals, no transitions.
SubseqTransducer make_transducer(MonoidDescriptor descriptor,
                                 std::string alphabet, int num_states = 1,
                                 int start = 0);

/// A path: a chained transition sequence starting at `source`, with the
/// input letter and output of each step. A length-0 path is valid.
struct Path {
  int source = 0;
  std::string letters;
  std::vector<Element> outputs;

  /// True when |letters| == |outputs| and each step exists in `t` and
  /// chains to the next.
  bool chains_in(const SubseqTransducer& t) const;
};

/// The single transition from q on c, if any.
const std::pair<Element, int>* step(const SubseqTransducer& t, int q, char c);

/// State reached from q by w, or nullopt when a transition is missing.
/// Throws UnknownLetterError for letters outside the alphabet.
std::optional<int> delta_star(const SubseqTransducer& t, int q,
                              std::string_view w);

/// Fold of transition outputs along the unique path from q labelled w;
/// unit for the empty word; nullopt where delta_star is.
std::optional<Element> lambda_star(const SubseqTransducer& t, int q,
                                   std::string_view w);

/// iota . lambda*(start,w) . Psi(delta*(start,w)) when w leads to a
/// final state, nullopt otherwise.
std::optional<Element> eval(const SubseqTransducer& t, std::string_view w);

/// Removes states that are not both accessible and co-accessible and
/// renumbers the rest canonically. If no final state is reachable the
/// result is the canonical empty-domain machine.
SubseqTransducer trim(const SubseqTransducer& t);

/// Totalises the transition function by adding one non-final sink state
/// with unit outputs. Returns the machine unchanged when already total.
SubseqTransducer complete(const SubseqTransducer& t);

/// Renumbers states in BFS order from the start (letters in alphabet
/// order), unreachable states last in ascending old order.
SubseqTransducer canonical_form(const SubseqTransducer& t);

}  // namespace mgefst

#include "mgefst/transducer.hpp"

#include <algorithm>
#include <deque>

namespace mgefst {

void SubseqTransducer::validate() const {
  if (num_states <= 0) throw PreconditionError("machine needs >= 1 state");
  if (start < 0 || start >= num_states) {
    throw PreconditionError("start state out of range");
  }
  std::string sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionError("duplicate letter in machine alphabet");
  }
  if (init_out.descriptor() != descriptor) {
    throw DescriptorMismatchError("initial output descriptor mismatch");
  }
  for (const auto& [q, out] : finals) {
    if (q < 0 || q >= num_states) throw PreconditionError("final out of range");
    if (out.descriptor() != descriptor) {
      throw DescriptorMismatchError("final output descriptor mismatch");
    }
  }
  for (const auto& [key, value] : transitions) {
    const auto& [src, letter] = key;
    const auto& [out, dst] = value;
    if (src < 0 || src >= num_states || dst < 0 || dst >= num_states) {
      throw PreconditionError("transition endpoint out of range");
    }
    if (!has_letter(letter)) {
      throw UnknownLetterError(std::string("transition letter '") + letter +
                               "' outside alphabet");
    }
    if (out.descriptor() != descriptor) {
      throw DescriptorMismatchError("transition output descriptor mismatch");
    }
  }
}

bool SubseqTransducer::is_complete() const {
  return transitions.size() ==
         static_cast<std::size_t>(num_states) * alphabet.size();
}

bool SubseqTransducer::has_letter(char c) const {
  return alphabet.find(c) != std::string::npos;
}

void SubseqTransducer::add_transition(int src, char c, Element out, int dst) {
  transitions[{src, c}] = {std::move(out), dst};
}

void SubseqTransducer::set_final(int state, Element out) {
  finals.insert_or_assign(state, std::move(out));
}

SubseqTransducer make_transducer(MonoidDescriptor descriptor,
                                 std::string alphabet, int num_states,
                                 int start) {
  SubseqTransducer t;
  t.descriptor = std::move(descriptor);
  t.alphabet = std::move(alphabet);
  t.num_states = num_states;
  t.start = start;
  t.init_out = unit(t.descriptor);
  return t;
}

bool Path::chains_in(const SubseqTransducer& t) const {
  if (letters.size() != outputs.size()) return false;
  int q = source;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const auto* tr = step(t, q, letters[i]);
    if (tr == nullptr || tr->first != outputs[i]) return false;
    q = tr->second;
  }
  return true;
}

const std::pair<Element, int>* step(const SubseqTransducer& t, int q, char c) {
  auto it = t.transitions.find({q, c});
  return it == t.transitions.end() ? nullptr : &it->second;
}

namespace {

void require_known_letters(const SubseqTransducer& t, std::string_view w) {
  for (char c : w) {
    if (!t.has_letter(c)) {
      throw UnknownLetterError(std::string("letter '") + c +
                               "' outside alphabet " + t.alphabet);
    }
  }
}

}  // namespace

std::optional<int> delta_star(const SubseqTransducer& t, int q,
                              std::string_view w) {
  require_known_letters(t, w);
  for (char c : w) {
    const auto* tr = step(t, q, c);
    if (tr == nullptr) return std::nullopt;
    q = tr->second;
  }
  return q;
}

std::optional<Element> lambda_star(const SubseqTransducer& t, int q,
                                   std::string_view w) {
  require_known_letters(t, w);
  Element acc = unit(t.descriptor);
  for (char c : w) {
    const auto* tr = step(t, q, c);
    if (tr == nullptr) return std::nullopt;
    acc = op(acc, tr->first);
    q = tr->second;
  }
  return acc;
}

std::optional<Element> eval(const SubseqTransducer& t, std::string_view w) {
  require_known_letters(t, w);
  int q = t.start;
  Element acc = t.init_out;
  for (char c : w) {
    const auto* tr = step(t, q, c);
    if (tr == nullptr) return std::nullopt;
    acc = op(acc, tr->first);
    q = tr->second;
  }
  auto fin = t.finals.find(q);
  if (fin == t.finals.end()) return std::nullopt;
  return op(acc, fin->second);
}

namespace {

std::vector<bool> accessible_states(const SubseqTransducer& t) {
  std::vector<bool> seen(t.num_states, false);
  std::deque<int> queue{t.start};
  seen[t.start] = true;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (char c : t.alphabet) {
      const auto* tr = step(t, q, c);
      if (tr != nullptr && !seen[tr->second]) {
        seen[tr->second] = true;
        queue.push_back(tr->second);
      }
    }
  }
  return seen;
}

std::vector<bool> coaccessible_states(const SubseqTransducer& t) {
  std::vector<std::vector<int>> reverse(t.num_states);
  for (const auto& [key, value] : t.transitions) {
    reverse[value.second].push_back(key.first);
  }
  std::vector<bool> seen(t.num_states, false);
  std::deque<int> queue;
  for (const auto& [q, out] : t.finals) {
    if (!seen[q]) {
      seen[q] = true;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int p : reverse[q]) {
      if (!seen[p]) {
        seen[p] = true;
        queue.push_back(p);
      }
    }
  }
  return seen;
}

SubseqTransducer empty_domain_machine(const SubseqTransducer& t) {
  return make_transducer(t.descriptor, t.alphabet);
}

// Rebuilds the machine keeping only states with keep[q], renumbered by
// `order` (new id = position in order).
SubseqTransducer rebuild(const SubseqTransducer& t,
                         const std::vector<int>& order) {
  std::vector<int> new_id(t.num_states, -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_id[order[i]] = static_cast<int>(i);
  }
  SubseqTransducer out = make_transducer(t.descriptor, t.alphabet,
                                         static_cast<int>(order.size()),
                                         new_id[t.start]);
  out.init_out = t.init_out;
  for (const auto& [q, psi] : t.finals) {
    if (new_id[q] >= 0) out.set_final(new_id[q], psi);
  }
  for (const auto& [key, value] : t.transitions) {
    if (new_id[key.first] >= 0 && new_id[value.second] >= 0) {
      out.add_transition(new_id[key.first], key.second, value.first,
                         new_id[value.second]);
    }
  }
  return out;
}

}  // namespace

SubseqTransducer trim(const SubseqTransducer& t) {
  auto acc = accessible_states(t);
  auto coacc = coaccessible_states(t);
  if (!coacc[t.start]) return empty_domain_machine(t);

  std::vector<bool> keep(t.num_states, false);
  for (int q = 0; q < t.num_states; ++q) keep[q] = acc[q] && coacc[q];

  // BFS order over kept states only.
  std::vector<int> order;
  std::vector<bool> seen(t.num_states, false);
  std::deque<int> queue{t.start};
  seen[t.start] = true;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    order.push_back(q);
    for (char c : t.alphabet) {
      const auto* tr = step(t, q, c);
      if (tr != nullptr && keep[tr->second] && !seen[tr->second]) {
        seen[tr->second] = true;
        queue.push_back(tr->second);
      }
    }
  }
  return rebuild(t, order);
}

SubseqTransducer complete(const SubseqTransducer& t) {
  if (t.is_complete()) return t;
  SubseqTransducer out = t;
  int sink = out.num_states;
  out.num_states += 1;
  Element e = unit(out.descriptor);
  for (int q = 0; q < out.num_states; ++q) {
    for (char c : out.alphabet) {
      if (step(out, q, c) == nullptr) out.add_transition(q, c, e, sink);
    }
  }
  return out;
}

SubseqTransducer canonical_form(const SubseqTransducer& t) {
  std::vector<int> order;
  std::vector<bool> seen(t.num_states, false);
  std::deque<int> queue{t.start};
  seen[t.start] = true;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    order.push_back(q);
    for (char c : t.alphabet) {
      const auto* tr = step(t, q, c);
      if (tr != nullptr && !seen[tr->second]) {
        seen[tr->second] = true;
        queue.push_back(tr->second);
      }
    }
  }
  for (int q = 0; q < t.num_states; ++q) {
    if (!seen[q]) order.push_back(q);
  }
  return rebuild(t, order);
}

}  // namespace mgefst

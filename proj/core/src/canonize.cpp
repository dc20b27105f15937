#include "mgefst/canonize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "mgefst/transducer_io.hpp"

namespace mgefst {

namespace {

// Projects a product-labelled machine onto one component, keeping the
// skeleton.
SubseqTransducer component_machine(const SubseqTransducer& t, bool left) {
  const MonoidDescriptor& d =
      left ? t.descriptor.left() : t.descriptor.right();
  SubseqTransducer out = make_transducer(d, t.alphabet, t.num_states, t.start);
  auto part = [left](const Element& e) { return left ? e.first() : e.second(); };
  out.init_out = part(t.init_out);
  for (const auto& [q, psi] : t.finals) out.set_final(q, part(psi));
  for (const auto& [key, value] : t.transitions) {
    out.add_transition(key.first, key.second, part(value.first), value.second);
  }
  return out;
}

// Shortest completing suffix per state (ties broken by alphabet order),
// then the output value along it. Valid for trimmed machines, where
// every state completes. Any such value is an infimum choice when every
// element of the component is invertible.
std::vector<Element> completion_values(const SubseqTransducer& t) {
  std::vector<int> dist(t.num_states, -1);
  std::vector<std::vector<int>> reverse(t.num_states);
  for (const auto& [key, value] : t.transitions) {
    reverse[value.second].push_back(key.first);
  }
  std::deque<int> queue;
  for (const auto& [q, psi] : t.finals) {
    dist[q] = 0;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int p : reverse[q]) {
      if (dist[p] < 0) {
        dist[p] = dist[q] + 1;
        queue.push_back(p);
      }
    }
  }
  std::vector<Element> values;
  values.reserve(t.num_states);
  for (int q = 0; q < t.num_states; ++q) {
    if (dist[q] < 0) throw PreconditionError("push on non-trimmed machine");
    Element acc = unit(t.descriptor);
    int cur = q;
    while (dist[cur] > 0) {
      for (char c : t.alphabet) {
        const auto* tr = step(t, cur, c);
        if (tr != nullptr && dist[tr->second] == dist[cur] - 1) {
          acc = op(acc, tr->first);
          cur = tr->second;
          break;
        }
      }
    }
    values.push_back(op(acc, t.finals.at(cur)));
  }
  return values;
}

// Jacobi iteration for the greatest fixpoint of
//   p(q) = meet({Psi(q) if final} u {lambda(q,a) . p(delta(q,a))}).
// Starts from the top (no completion seen yet, absorbed by the meet) so
// round k holds the meet over completions of at most k steps; stability
// under exact label equality between rounds is the convergence test.
std::vector<Element> fixpoint_values(const SubseqTransducer& t) {
  std::size_t proxy = 0;
  for (const auto& [q, psi] : t.finals) proxy = std::max(proxy, psi.size_proxy());
  for (const auto& [key, value] : t.transitions) {
    proxy = std::max(proxy, value.first.size_proxy());
  }
  const std::size_t cap = std::min<std::size_t>(
      10000,
      std::max<std::size_t>(4 * t.num_states + 8,
                            static_cast<std::size_t>(t.num_states) * (1 + proxy)));

  std::vector<std::optional<Element>> p(t.num_states);
  for (std::size_t round = 0; round < cap; ++round) {
    std::vector<std::optional<Element>> next(t.num_states);
    for (int q = 0; q < t.num_states; ++q) {
      std::optional<Element> acc;
      auto fin = t.finals.find(q);
      if (fin != t.finals.end()) acc = fin->second;
      for (char c : t.alphabet) {
        const auto* tr = step(t, q, c);
        if (tr == nullptr || !p[tr->second]) continue;
        Element term = op(tr->first, *p[tr->second]);
        acc = acc ? meet(*acc, term) : term;
      }
      next[q] = std::move(acc);
    }
    if (next == p) {
      std::vector<Element> out;
      out.reserve(t.num_states);
      for (auto& v : p) {
        if (!v) throw PreconditionError("push on non-trimmed machine");
        out.push_back(std::move(*v));
      }
      return out;
    }
    p = std::move(next);
  }
  throw NonConvergenceError("output push did not stabilise within " +
                            std::to_string(cap) + " rounds");
}

// Per-state push values; one infimum of each state's suffix-output set.
std::vector<Element> push_values(const SubseqTransducer& t) {
  switch (t.descriptor.kind()) {
    case MonoidDescriptor::Kind::IntegerGroup:
      return completion_values(t);
    case MonoidDescriptor::Kind::Product: {
      if (!t.descriptor.has_group_component()) return fixpoint_values(t);
      auto lv = push_values(component_machine(t, true));
      auto rv = push_values(component_machine(t, false));
      std::vector<Element> out;
      out.reserve(t.num_states);
      for (int q = 0; q < t.num_states; ++q) {
        out.push_back(Element::pair(t.descriptor, lv[q], rv[q]));
      }
      return out;
    }
    default:
      return fixpoint_values(t);
  }
}

}  // namespace

SubseqTransducer onward(const SubseqTransducer& t) {
  SubseqTransducer m = trim(t);
  if (m.finals.empty()) return m;

  std::vector<Element> p = push_values(m);

  SubseqTransducer out = make_transducer(m.descriptor, m.alphabet,
                                         m.num_states, m.start);
  out.init_out = op(m.init_out, p[m.start]);
  for (const auto& [q, psi] : m.finals) {
    out.set_final(q, quotient(psi, p[q]));
  }
  for (const auto& [key, value] : m.transitions) {
    out.add_transition(key.first, key.second,
                       quotient(op(value.first, p[value.second]), p[key.first]),
                       value.second);
  }
  return out;
}

namespace {

std::string refinement_signature(const SubseqTransducer& t,
                                 const std::vector<int>& block, int q) {
  std::ostringstream sig;
  sig << block[q];
  for (char c : t.alphabet) {
    const auto* tr = step(t, q, c);
    if (tr == nullptr) {
      sig << "|-";
    } else {
      sig << "|" << tr->first.to_literal() << ">" << block[tr->second];
    }
  }
  return sig.str();
}

}  // namespace

SubseqTransducer minimize(const SubseqTransducer& t) {
  SubseqTransducer m = onward(t);
  if (m.finals.empty()) return m;

  // Initial blocks: final status plus exact final output.
  std::vector<int> block(m.num_states, -1);
  {
    std::map<std::string, int> ids;
    for (int q = 0; q < m.num_states; ++q) {
      auto fin = m.finals.find(q);
      std::string key = fin == m.finals.end()
                            ? std::string("-")
                            : "F" + fin->second.to_literal();
      auto [it, inserted] = ids.try_emplace(key, static_cast<int>(ids.size()));
      block[q] = it->second;
    }
  }

  // Moore refinement with exact transition labels.
  for (;;) {
    std::map<std::string, int> ids;
    std::vector<int> next(m.num_states, -1);
    for (int q = 0; q < m.num_states; ++q) {
      auto [it, inserted] = ids.try_emplace(refinement_signature(m, block, q),
                                            static_cast<int>(ids.size()));
      next[q] = it->second;
    }
    bool stable = next == block;
    block = std::move(next);
    if (stable) break;
  }

  int num_blocks = *std::max_element(block.begin(), block.end()) + 1;
  std::vector<int> rep(num_blocks, -1);
  for (int q = 0; q < m.num_states; ++q) {
    if (rep[block[q]] < 0) rep[block[q]] = q;
  }

  SubseqTransducer out =
      make_transducer(m.descriptor, m.alphabet, num_blocks, block[m.start]);
  out.init_out = m.init_out;
  for (int b = 0; b < num_blocks; ++b) {
    int q = rep[b];
    auto fin = m.finals.find(q);
    if (fin != m.finals.end()) out.set_final(b, fin->second);
    for (char c : m.alphabet) {
      const auto* tr = step(m, q, c);
      if (tr != nullptr) out.add_transition(b, c, tr->first, block[tr->second]);
    }
  }
  return canonical_form(out);
}

namespace {

std::string word_literal(const std::string& w) { return w.empty() ? "_" : w; }

// Shortest completing suffix from q (trimmed machines always have one).
std::string shortest_completion(const SubseqTransducer& t, int q) {
  std::vector<int> dist(t.num_states, -1);
  std::vector<std::vector<int>> reverse(t.num_states);
  for (const auto& [key, value] : t.transitions) {
    reverse[value.second].push_back(key.first);
  }
  std::deque<int> queue;
  for (const auto& [f, psi] : t.finals) {
    dist[f] = 0;
    queue.push_back(f);
  }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int p : reverse[s]) {
      if (dist[p] < 0) {
        dist[p] = dist[s] + 1;
        queue.push_back(p);
      }
    }
  }
  std::string suffix;
  int cur = q;
  while (dist[cur] > 0) {
    for (char c : t.alphabet) {
      const auto* tr = step(t, cur, c);
      if (tr != nullptr && dist[tr->second] == dist[cur] - 1) {
        suffix += c;
        cur = tr->second;
        break;
      }
    }
  }
  return suffix;
}

EquivalenceResult value_diff(const SubseqTransducer& a,
                             const SubseqTransducer& b, std::string word) {
  EquivalenceResult r;
  r.equivalent = false;
  r.kind = EquivalenceResult::Kind::ValueDiff;
  r.lhs = eval(a, word);
  r.rhs = eval(b, word);
  r.word = std::move(word);
  return r;
}

EquivalenceResult domain_diff(std::string word) {
  EquivalenceResult r;
  r.equivalent = false;
  r.kind = EquivalenceResult::Kind::DomainDiff;
  r.word = std::move(word);
  return r;
}

}  // namespace

std::string EquivalenceResult::to_line() const {
  switch (kind) {
    case Kind::Equal:
      return "EQUIVALENT";
    case Kind::ValueDiff:
      return "DIFF " + word_literal(word) + " " +
             (lhs ? lhs->to_literal() : "UNDEFINED") + " " +
             (rhs ? rhs->to_literal() : "UNDEFINED");
    case Kind::DomainDiff:
      return "DIFF-DOMAIN " + word_literal(word);
    case Kind::LabelDiff:
      return "DIFF-LABELS " + detail;
  }
  return "EQUIVALENT";
}

EquivalenceResult equivalent(const SubseqTransducer& a,
                             const SubseqTransducer& b, int depth) {
  if (a.descriptor != b.descriptor) {
    throw DescriptorMismatchError("machines over different monoids");
  }
  if (a.alphabet != b.alphabet) {
    throw PreconditionError("machines over different alphabets");
  }

  SubseqTransducer ma = minimize(a);
  SubseqTransducer mb = minimize(b);
  if (serialize_transducer(ma) == serialize_transducer(mb)) {
    EquivalenceResult r;
    r.equivalent = true;
    return r;
  }

  // Synchronized product walk with lag-normalised accumulated outputs.
  // A state of -1 means the machine has already died on this prefix.
  struct Node {
    int qa, qb;
    Element ra, rb;
    std::string word;
  };
  Element g0 = meet(ma.init_out, mb.init_out);
  std::deque<Node> queue{{ma.start, mb.start, quotient(ma.init_out, g0),
                          quotient(mb.init_out, g0), ""}};
  std::set<std::string> visited;

  auto key_of = [](const Node& n) {
    return std::to_string(n.qa) + "," + std::to_string(n.qb) + "|" +
           n.ra.to_literal() + "|" + n.rb.to_literal();
  };
  visited.insert(key_of(queue.front()));

  while (!queue.empty()) {
    Node n = queue.front();
    queue.pop_front();

    if (n.qa < 0 && n.qb < 0) continue;
    if (n.qa < 0) return domain_diff(n.word + shortest_completion(mb, n.qb));
    if (n.qb < 0) return domain_diff(n.word + shortest_completion(ma, n.qa));

    auto fa = ma.finals.find(n.qa);
    auto fb = mb.finals.find(n.qb);
    bool final_a = fa != ma.finals.end();
    bool final_b = fb != mb.finals.end();
    if (final_a != final_b) return domain_diff(n.word);
    if (final_a && op(n.ra, fa->second) != op(n.rb, fb->second)) {
      return value_diff(a, b, n.word);
    }

    if (static_cast<int>(n.word.size()) >= depth) continue;
    for (char c : ma.alphabet) {
      const auto* ta = n.qa < 0 ? nullptr : step(ma, n.qa, c);
      const auto* tb = n.qb < 0 ? nullptr : step(mb, n.qb, c);
      if (ta == nullptr && tb == nullptr) continue;
      Node next;
      next.word = n.word + c;
      next.qa = ta ? ta->second : -1;
      next.qb = tb ? tb->second : -1;
      Element xa = ta ? op(n.ra, ta->first) : unit(ma.descriptor);
      Element xb = tb ? op(n.rb, tb->first) : unit(ma.descriptor);
      if (ta && tb) {
        Element g = meet(xa, xb);
        next.ra = quotient(xa, g);
        next.rb = quotient(xb, g);
      } else {
        next.ra = xa;
        next.rb = xb;
      }
      if (visited.insert(key_of(next)).second) queue.push_back(next);
    }
  }

  // Structurally different minimal forms but no behavioural witness
  // within the depth bound: report the first differing canonical line.
  std::istringstream sa(serialize_transducer(ma));
  std::istringstream sb(serialize_transducer(mb));
  std::string la, lb;
  EquivalenceResult r;
  r.equivalent = false;
  r.kind = EquivalenceResult::Kind::LabelDiff;
  while (true) {
    bool ga = static_cast<bool>(std::getline(sa, la));
    bool gb = static_cast<bool>(std::getline(sb, lb));
    if (!ga && !gb) break;
    if (!ga || !gb || la != lb) {
      r.detail = (ga ? la : "<none>") + " vs " + (gb ? lb : "<none>");
      break;
    }
  }
  return r;
}

std::optional<WitnessTriple> witness_from_transducer(const SubseqTransducer& t,
                                                     std::string_view alpha,
                                                     std::string_view beta) {
  if (!t.is_complete()) {
    throw PreconditionError("witness extraction needs a complete machine");
  }
  int pa = *delta_star(t, t.start, alpha);
  int pb = *delta_star(t, t.start, beta);
  if (pa != pb) return std::nullopt;

  WitnessTriple w;
  w.u = op(t.init_out, *lambda_star(t, t.start, alpha));
  w.v = op(t.init_out, *lambda_star(t, t.start, beta));

  // All suffixes up to 2*|Q| letters, sampled where they complete.
  int depth = 2 * t.num_states;
  struct Frame {
    int state;
    Element out;
    std::string suffix;
  };
  std::deque<Frame> queue{{pa, unit(t.descriptor), ""}};
  while (!queue.empty()) {
    Frame f = queue.front();
    queue.pop_front();
    auto fin = t.finals.find(f.state);
    if (fin != t.finals.end()) {
      w.samples.emplace(f.suffix, op(f.out, fin->second));
    }
    if (static_cast<int>(f.suffix.size()) >= depth) continue;
    for (char c : t.alphabet) {
      const auto* tr = step(t, f.state, c);
      queue.push_back({tr->second, op(f.out, tr->first), f.suffix + c});
    }
  }

  check_witness(
      w, [&t](std::string_view x) { return eval(t, x); }, alpha, beta);
  return w;
}

}  // namespace mgefst

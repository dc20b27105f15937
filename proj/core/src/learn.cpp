#include "mgefst/learn.hpp"

#include <algorithm>
#include <deque>

namespace mgefst {

std::vector<std::string> enumerate_words(const std::string& alphabet,
                                         int max_len) {
  std::vector<std::string> words{""};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = words.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (char c : alphabet) words.push_back(words[i] + c);
    }
    level_begin = level_end;
  }
  return words;
}

namespace {

// Residual fingerprint of one word: the oracle's value on word+z for
// every canonical suffix z, plus the meet-fold over the defined ones.
struct Scan {
  std::vector<std::optional<Element>> outputs;
  std::optional<Element> meet_value;

  bool any_defined() const { return meet_value.has_value(); }
  bool accepts() const { return !outputs.empty() && outputs[0].has_value(); }
};

Scan full_scan(const FunctionOracle& f, const std::string& word,
               const std::vector<std::string>& suffixes) {
  Scan scan;
  scan.outputs.reserve(suffixes.size());
  for (const std::string& z : suffixes) {
    auto value = f.query(word + z);
    if (value) {
      scan.meet_value =
          scan.meet_value ? meet(*scan.meet_value, *value) : *value;
    }
    scan.outputs.push_back(std::move(value));
  }
  return scan;
}

// Meet-fold of the residual outputs only; avoids storing the outputs.
std::optional<Element> residual_meet(const FunctionOracle& f,
                                     const std::string& word,
                                     const std::vector<std::string>& suffixes) {
  std::optional<Element> acc;
  for (const std::string& z : suffixes) {
    auto value = f.query(word + z);
    if (value) acc = acc ? meet(*acc, *value) : *value;
  }
  return acc;
}

EquivWordsResult equiv_from_scans(const FunctionOracle& f,
                                  std::string_view alpha, const Scan& sa,
                                  std::string_view beta, const Scan& sb,
                                  const std::vector<std::string>& suffixes) {
  EquivWordsResult result;
  for (std::size_t i = 0; i < suffixes.size(); ++i) {
    if (sa.outputs[i].has_value() != sb.outputs[i].has_value()) {
      result.mismatch = EquivWordsResult::Mismatch::Domain;
      result.separator = suffixes[i];
      return result;
    }
  }
  WitnessTriple w;
  if (!sa.any_defined()) {
    w.u = unit(f.descriptor());
    w.v = w.u;
    check_witness(w, f.as_query_fn(), alpha, beta);
    result.witness = std::move(w);
    return result;
  }
  w.u = *sa.meet_value;
  w.v = *sb.meet_value;
  for (std::size_t i = 0; i < suffixes.size(); ++i) {
    if (!sa.outputs[i]) continue;
    Element qa = quotient(*sa.outputs[i], w.u);
    Element qb = quotient(*sb.outputs[i], w.v);
    if (qa != qb) {
      result.mismatch = EquivWordsResult::Mismatch::Value;
      result.separator = suffixes[i];
      return result;
    }
    w.samples.emplace(suffixes[i], std::move(qa));
  }
  check_witness(w, f.as_query_fn(), alpha, beta);
  result.witness = std::move(w);
  return result;
}

}  // namespace

EquivWordsResult equiv_words(const FunctionOracle& f, std::string_view alpha,
                             std::string_view beta, int depth) {
  if (depth < 0) throw PreconditionError("depth must be >= 0");
  auto suffixes = enumerate_words(f.alphabet(), depth);
  Scan sa = full_scan(f, std::string(alpha), suffixes);
  Scan sb = full_scan(f, std::string(beta), suffixes);
  return equiv_from_scans(f, alpha, sa, beta, sb, suffixes);
}

int ClassTable::letter_index(char c) const {
  auto pos = alphabet.find(c);
  if (pos == std::string::npos) {
    throw UnknownLetterError(std::string("letter '") + c +
                             "' outside alphabet " + alphabet);
  }
  return static_cast<int>(pos);
}

int ClassTable::class_of(std::string_view word) const {
  int cls = 0;
  for (char c : word) cls = class_dfa[cls][letter_index(c)];
  return cls;
}

namespace {

constexpr std::size_t kMemberBudget = 200000;
constexpr std::size_t kFullValueThreshold = 512;

}  // namespace

ClassTable build_class_table(const FunctionOracle& f, int n_bound, int depth) {
  if (n_bound < 1) throw PreconditionError("class bound must be >= 1");
  if (depth < 0) throw PreconditionError("depth must be >= 0");

  ClassTable table;
  table.descriptor = f.descriptor();
  table.alphabet = f.alphabet();
  table.n_bound = n_bound;
  table.depth = depth;

  const auto suffixes = enumerate_words(table.alphabet, depth);

  // Discover representatives breadth-first: every class is reachable by
  // extending an already-found representative with one letter, so only
  // those extensions ever need the full bounded-equivalence test. Other
  // words inherit their class through right invariance of the relation.
  std::vector<std::string> reps{""};
  std::vector<Scan> rep_scans{full_scan(f, "", suffixes)};
  std::deque<int> work{0};
  while (!work.empty()) {
    int i = work.front();
    work.pop_front();
    table.class_dfa.resize(reps.size());
    for (char c : table.alphabet) {
      std::string word = reps[i] + c;
      Scan scan = full_scan(f, word, suffixes);
      int target = -1;
      for (std::size_t j = 0; j < reps.size(); ++j) {
        auto r = equiv_from_scans(f, word, scan, reps[j], rep_scans[j], suffixes);
        if (r.equivalent()) {
          target = static_cast<int>(j);
          break;
        }
      }
      if (target < 0) {
        if (static_cast<int>(reps.size()) == n_bound) {
          auto certificate = reps;
          certificate.push_back(word);
          throw IndexExceededError(n_bound, std::move(certificate));
        }
        target = static_cast<int>(reps.size());
        reps.push_back(word);
        rep_scans.push_back(std::move(scan));
        work.push_back(target);
      }
      table.class_dfa[i].push_back(target);
    }
  }
  const int n = static_cast<int>(reps.size());
  table.classes.resize(n);
  for (int i = 0; i < n; ++i) {
    ClassInfo& info = table.classes[i];
    info.rep = reps[i];
    info.live = rep_scans[i].any_defined();
    info.accepts = rep_scans[i].accepts();
    info.m_factor = unit(table.descriptor);
    if (info.live) {
      const Element& base = *rep_scans[i].meet_value;
      for (std::size_t k = 0; k < suffixes.size(); ++k) {
        if (rep_scans[i].outputs[k]) {
          info.s.emplace(suffixes[k], quotient(*rep_scans[i].outputs[k], base));
        }
      }
    }
  }

  // Class membership for every word of length <= 2*n_bound - 1, walked
  // through the class automaton.
  {
    std::size_t budget = kMemberBudget;
    struct Item {
      std::string word;
      int cls;
    };
    std::deque<Item> queue{{"", 0}};
    int member_len_bound = 2 * n_bound - 1;
    while (!queue.empty()) {
      Item item = std::move(queue.front());
      queue.pop_front();
      if (budget == 0) {
        table.members_truncated = true;
        break;
      }
      --budget;
      table.classes[item.cls].members.push_back(item.word);
      if (static_cast<int>(item.word.size()) >= member_len_bound) continue;
      for (std::size_t a = 0; a < table.alphabet.size(); ++a) {
        queue.push_back({item.word + table.alphabet[a],
                         table.class_dfa[item.cls][a]});
      }
    }
  }

  // The v(.) values. The uniformisation construction collapses in these
  // instances: all members of a class share the representative's meet as
  // the u-side of their witness, so the joined base u equals it, the
  // correction quotient is the unit, and the weak-limit witness X folds
  // to the unit as well. v(w) is then the member's own residual meet.
  const int ext_bound = std::max(1, n - 1);
  std::size_t short_members = 0;
  for (const ClassInfo& info : table.classes) {
    for (const std::string& w : info.members) {
      if (static_cast<int>(w.size()) <= 2 * n - 1) ++short_members;
    }
  }
  const bool full_values =
      !table.members_truncated && short_members <= kFullValueThreshold;

  std::vector<std::string> value_words;
  if (full_values) {
    for (const ClassInfo& info : table.classes) {
      for (const std::string& w : info.members) {
        if (static_cast<int>(w.size()) <= 2 * n - 1) value_words.push_back(w);
      }
    }
  } else {
    auto extensions = enumerate_words(table.alphabet, ext_bound);
    for (int i = 0; i < n; ++i) {
      for (const std::string& beta : extensions) {
        value_words.push_back(reps[i] + beta);
      }
    }
  }
  std::sort(value_words.begin(), value_words.end(),
            [](const std::string& a, const std::string& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  value_words.erase(std::unique(value_words.begin(), value_words.end()),
                    value_words.end());

  for (const std::string& w : value_words) {
    int j = table.class_of(w);
    ClassInfo& info = table.classes[j];
    if (info.v.count(w)) continue;
    if (!info.live) {
      info.v.emplace(w, unit(table.descriptor));
      continue;
    }
    const Element& u_base = *rep_scans[j].meet_value;
    std::optional<Element> mw = w == info.rep
                                    ? rep_scans[j].meet_value
                                    : residual_meet(f, w, suffixes);
    if (!mw) {
      throw QuotientFailureError("member '" + w +
                                 "' lost its residual domain; depth too small");
    }
    auto joined = join(u_base, u_base);  // the folded witness base
    Element v_prime = op(*mw, quotient(*joined, u_base));
    info.v.emplace(w, std::move(v_prime));
  }

  // Weak-limit correction hook: the per-prefix-pair witnesses join to
  // the unit here, so applying X leaves the values unchanged.
  for (ClassInfo& info : table.classes) {
    if (!info.live) continue;
    Element x = unit(table.descriptor);
    for (const auto& [w1, v1] : info.v) {
      for (const auto& [w2, v2] : info.v) {
        if (w1.size() < w2.size() && w2.starts_with(w1)) {
          auto j = join(x, wlp_witness(v1, v2));
          if (!j) throw QuotientFailureError("weak-limit witnesses diverged");
          x = *j;
        }
      }
    }
    for (auto& [w, value] : info.v) value = op(value, x);
    // Prefix monotonicity of v along extensions within the class.
    for (const auto& [w1, v1] : info.v) {
      for (const auto& [w2, v2] : info.v) {
        if (w1.size() < w2.size() && w2.starts_with(w1) && !le(v1, v2)) {
          throw QuotientFailureError(
              "prefix monotonicity failed between '" + w1 + "' and '" + w2 +
              "'; depth too small for this oracle");
        }
      }
    }
  }

  // M_j: fold of the join-quotients over representative extensions that
  // land in class j.
  for (int j = 0; j < n; ++j) {
    ClassInfo& info = table.classes[j];
    if (!info.live) continue;
    std::optional<Element> m;
    for (int i = 0; i < n; ++i) {
      if (!table.classes[i].live) continue;
      const Element& vi = table.classes[i].v.at(reps[i]);
      for (const std::string& w : value_words) {
        if (table.class_of(w) != j) continue;
        if (!w.starts_with(reps[i])) continue;
        if (!full_values &&
            static_cast<int>(w.size() - reps[i].size()) > ext_bound) {
          continue;
        }
        const Element& vw = info.v.at(w);
        auto upper = join(vi, vw);
        if (!upper) {
          throw QuotientFailureError("values of '" + reps[i] + "' and '" + w +
                                     "' have no join; depth too small");
        }
        Element e = quotient(*upper, vw);
        if (!m) {
          m = std::move(e);
        } else {
          auto folded = join(*m, e);
          if (!folded) {
            throw QuotientFailureError("M factor join undefined for class " +
                                       std::to_string(j));
          }
          m = std::move(*folded);
        }
      }
    }
    if (m) info.m_factor = std::move(*m);
  }

  return table;
}

SubseqTransducer construct_minimal(const ClassTable& table) {
  const int n = static_cast<int>(table.classes.size());
  SubseqTransducer t = make_transducer(table.descriptor, table.alphabet, n, 0);

  const ClassInfo& start = table.classes[0];
  if (start.live) {
    t.init_out = op(start.v.at(start.rep), start.m_factor);
  }

  for (int i = 0; i < n; ++i) {
    const ClassInfo& ci = table.classes[i];
    for (std::size_t a = 0; a < table.alphabet.size(); ++a) {
      char letter = table.alphabet[a];
      int j = table.class_dfa[i][a];
      const ClassInfo& cj = table.classes[j];
      Element out = unit(table.descriptor);
      if (cj.live) {
        std::string word = ci.rep + letter;
        const Element num = op(cj.v.at(word), cj.m_factor);
        const Element den = op(ci.v.at(ci.rep), ci.m_factor);
        if (!le(den, num)) {
          throw QuotientFailureError(
              "transition output undefined for class " + std::to_string(i) +
              " on '" + std::string(1, letter) + "' into class " +
              std::to_string(j) + "; depth too small for this oracle");
        }
        out = quotient(num, den);
      }
      t.add_transition(i, letter, std::move(out), j);
    }
    if (ci.accepts) {
      const Element& s_eps = ci.s.at("");
      if (!le(ci.m_factor, s_eps)) {
        throw QuotientFailureError("final output undefined for class " +
                                   std::to_string(i));
      }
      t.set_final(i, quotient(s_eps, ci.m_factor));
    }
  }
  t.validate();
  return t;
}

SubseqTransducer construct_minimal(const FunctionOracle& f, int n_bound,
                                   int depth) {
  return construct_minimal(build_class_table(f, n_bound, depth));
}

}  // namespace mgefst

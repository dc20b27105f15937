#include "mgefst/oracle.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>
#include <variant>

#include "mgefst/transducer_io.hpp"

namespace mgefst {

namespace {
constexpr std::size_t kPrefixCacheLimit = 400000;
}

struct FunctionOracle::Backing {
  MonoidDescriptor descriptor = MonoidDescriptor::tropical();
  std::string alphabet;

  // Exactly one of the two is active.
  std::optional<SubseqTransducer> machine;
  std::map<std::string, Element> table;

  // Prefix memo for the machine backing: word prefix -> (state, iota
  // composed with the outputs so far); nullopt marks a dead prefix.
  mutable std::unordered_map<std::string, std::optional<std::pair<int, Element>>>
      cache;

  std::optional<Element> query(std::string_view w) const {
    for (char c : w) {
      if (alphabet.find(c) == std::string::npos) {
        throw UnknownLetterError(std::string("letter '") + c +
                                 "' outside oracle alphabet " + alphabet);
      }
    }
    if (!machine) {
      auto it = table.find(std::string(w));
      if (it == table.end()) return std::nullopt;
      return it->second;
    }
    return machine_query(w);
  }

  std::optional<Element> machine_query(std::string_view w) const {
    const SubseqTransducer& t = *machine;
    if (cache.size() > kPrefixCacheLimit) cache.clear();

    // Longest memoised prefix, walking back from the full word.
    std::string prefix(w);
    std::optional<std::pair<int, Element>> at{{t.start, t.init_out}};
    std::size_t have = 0;
    while (!prefix.empty()) {
      auto it = cache.find(prefix);
      if (it != cache.end()) {
        at = it->second;
        have = prefix.size();
        break;
      }
      prefix.pop_back();
    }
    for (std::size_t i = have; i < w.size() && at; ++i) {
      const auto* tr = step(t, at->first, w[i]);
      if (tr == nullptr) {
        at = std::nullopt;
      } else {
        at = {{tr->second, op(at->second, tr->first)}};
      }
      prefix.push_back(w[i]);
      cache.emplace(prefix, at);
    }
    if (!at) return std::nullopt;
    auto fin = t.finals.find(at->first);
    if (fin == t.finals.end()) return std::nullopt;
    return op(at->second, fin->second);
  }
};

FunctionOracle::FunctionOracle(std::shared_ptr<Backing> backing)
    : backing_(std::move(backing)) {}

FunctionOracle FunctionOracle::from_transducer(SubseqTransducer machine) {
  machine.validate();
  auto backing = std::make_shared<Backing>();
  backing->descriptor = machine.descriptor;
  backing->alphabet = machine.alphabet;
  backing->machine = std::move(machine);
  return FunctionOracle(std::move(backing));
}

FunctionOracle FunctionOracle::from_table(MonoidDescriptor descriptor,
                                          std::string alphabet,
                                          std::map<std::string, Element> entries) {
  auto backing = std::make_shared<Backing>();
  for (const auto& [word, value] : entries) {
    for (char c : word) {
      if (alphabet.find(c) == std::string::npos) {
        throw UnknownLetterError("table word '" + word +
                                 "' uses a letter outside the alphabet");
      }
    }
    if (value.descriptor() != descriptor) {
      throw DescriptorMismatchError("table value for '" + word +
                                    "' has the wrong descriptor");
    }
  }
  backing->descriptor = std::move(descriptor);
  backing->alphabet = std::move(alphabet);
  backing->table = std::move(entries);
  return FunctionOracle(std::move(backing));
}

const MonoidDescriptor& FunctionOracle::descriptor() const {
  return backing_->descriptor;
}

const std::string& FunctionOracle::alphabet() const {
  return backing_->alphabet;
}

std::optional<Element> FunctionOracle::query(std::string_view w) const {
  return backing_->query(w);
}

QueryFn FunctionOracle::as_query_fn() const {
  auto backing = backing_;
  return [backing](std::string_view w) { return backing->query(w); };
}

FunctionOracle parse_oracle_table(std::istream& in,
                                  std::string_view source_name) {
  int line_no = 0;
  auto fail = [&](const std::string& message) -> void {
    throw ParseError(std::string(source_name) + ":" + std::to_string(line_no) +
                     ": " + message);
  };

  std::optional<MonoidDescriptor> descriptor;
  std::string alphabet;
  bool saw_alphabet = false;
  std::map<std::string, Element> entries;

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line.substr(0, line.find('#')));
    std::string head;
    if (!(tokens >> head)) continue;
    try {
      if (head == "monoid") {
        std::string lit;
        if (descriptor || !(tokens >> lit)) fail("bad monoid line");
        descriptor = MonoidDescriptor::parse(lit);
      } else if (head == "alphabet") {
        if (saw_alphabet || !descriptor || !(tokens >> alphabet)) {
          fail("bad alphabet line");
        }
        saw_alphabet = true;
      } else if (head == "map") {
        std::string word, lit;
        if (!descriptor || !saw_alphabet || !(tokens >> word >> lit)) {
          fail("bad map line");
        }
        if (word == "_") word.clear();
        if (entries.count(word)) fail("duplicate map entry for '" + word + "'");
        entries.emplace(word, Element::parse(*descriptor, lit));
      } else {
        fail("unknown directive '" + head + "'");
      }
      std::string extra;
      if (tokens >> extra) fail("trailing token '" + extra + "'");
    } catch (const ParseError& e) {
      std::string_view what = e.what();
      if (what.starts_with(source_name)) throw;
      fail(e.what());
    }
  }
  if (!descriptor) fail("missing monoid line");
  if (!saw_alphabet) fail("missing alphabet line");
  return FunctionOracle::from_table(*descriptor, alphabet, std::move(entries));
}

FunctionOracle load_oracle_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  return parse_oracle_table(in, path);
}

FunctionOracle load_oracle_any_file(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw ParseError(path + ": cannot open");
  bool has_machine_directive = false;
  std::string line;
  while (std::getline(probe, line)) {
    std::istringstream tokens(line.substr(0, line.find('#')));
    std::string head;
    if (!(tokens >> head)) continue;
    if (head == "start" || head == "final" || head == "trans") {
      has_machine_directive = true;
      break;
    }
    if (head == "map") break;
  }
  if (has_machine_directive) {
    return FunctionOracle::from_transducer(load_transducer_file(path));
  }
  return load_oracle_table_file(path);
}

}  // namespace mgefst

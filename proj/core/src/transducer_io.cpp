#include "mgefst/transducer_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <vector>

namespace mgefst {

namespace {

struct Loc {
  std::string_view source;
  int line = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ": " +
                     message);
  }
};

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line.substr(0, line.find('#')));
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_state_id(const std::string& tok, const Loc& loc) {
  if (tok.empty() ||
      !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    loc.fail("bad state id '" + tok + "'");
  }
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    loc.fail("state id out of range '" + tok + "'");
  }
}

}  // namespace

SubseqTransducer parse_transducer(std::istream& in,
                                  std::string_view source_name) {
  Loc loc{source_name, 0};
  std::optional<MonoidDescriptor> descriptor;
  std::string alphabet;
  bool saw_alphabet = false;
  std::optional<std::pair<int, Element>> start;
  std::vector<std::pair<int, Element>> finals;
  struct RawTrans {
    int src;
    char letter;
    Element out;
    int dst;
  };
  std::vector<RawTrans> trans;
  int max_state = -1;

  std::string line;
  while (std::getline(in, line)) {
    ++loc.line;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];
    try {
      if (head == "monoid") {
        if (descriptor) loc.fail("duplicate monoid line");
        if (tokens.size() != 2) loc.fail("monoid needs one descriptor");
        descriptor = MonoidDescriptor::parse(tokens[1]);
      } else if (head == "alphabet") {
        if (saw_alphabet) loc.fail("duplicate alphabet line");
        if (!descriptor) loc.fail("alphabet before monoid");
        if (tokens.size() != 2) loc.fail("alphabet needs one token");
        alphabet = tokens[1];
        saw_alphabet = true;
      } else if (head == "start") {
        if (!descriptor || !saw_alphabet) loc.fail("start before header");
        if (start) loc.fail("duplicate start line");
        if (tokens.size() != 3) loc.fail("start needs <id> <element>");
        int id = parse_state_id(tokens[1], loc);
        start = {id, Element::parse(*descriptor, tokens[2])};
        max_state = std::max(max_state, id);
      } else if (head == "final") {
        if (!start) loc.fail("final before start");
        if (tokens.size() != 3) loc.fail("final needs <id> <element>");
        int id = parse_state_id(tokens[1], loc);
        finals.emplace_back(id, Element::parse(*descriptor, tokens[2]));
        max_state = std::max(max_state, id);
      } else if (head == "trans") {
        if (!start) loc.fail("trans before start");
        if (tokens.size() != 5) {
          loc.fail("trans needs <src> <letter> <element> <dst>");
        }
        int src = parse_state_id(tokens[1], loc);
        if (tokens[2].size() != 1) loc.fail("letter must be one character");
        char letter = tokens[2][0];
        if (alphabet.find(letter) == std::string::npos) {
          loc.fail(std::string("letter '") + letter + "' outside alphabet");
        }
        int dst = parse_state_id(tokens[4], loc);
        trans.push_back({src, letter, Element::parse(*descriptor, tokens[3]), dst});
        max_state = std::max(max_state, std::max(src, dst));
      } else {
        loc.fail("unknown directive '" + head + "'");
      }
    } catch (const ParseError& e) {
      std::string_view what = e.what();
      if (what.starts_with(source_name)) throw;  // already located
      loc.fail(e.what());
    }
  }
  if (!descriptor) loc.fail("missing monoid line");
  if (!saw_alphabet) loc.fail("missing alphabet line");
  if (!start) loc.fail("missing start line");

  SubseqTransducer t =
      make_transducer(*descriptor, alphabet, max_state + 1, start->first);
  t.init_out = start->second;
  for (auto& [id, psi] : finals) {
    if (t.finals.count(id)) loc.fail("duplicate final state " + std::to_string(id));
    t.set_final(id, std::move(psi));
  }
  for (auto& r : trans) {
    if (t.transitions.count({r.src, r.letter})) {
      loc.fail("duplicate transition from " + std::to_string(r.src) +
               " on '" + std::string(1, r.letter) + "'");
    }
    t.add_transition(r.src, r.letter, std::move(r.out), r.dst);
  }
  try {
    t.validate();
  } catch (const Error& e) {
    loc.fail(e.what());
  }
  return t;
}

SubseqTransducer parse_transducer_text(std::string_view text,
                                       std::string_view source_name) {
  std::istringstream in{std::string(text)};
  return parse_transducer(in, source_name);
}

std::string serialize_transducer(const SubseqTransducer& t) {
  SubseqTransducer c = canonical_form(t);
  std::ostringstream out;
  out << "monoid " << c.descriptor.to_literal() << "\n";
  out << "alphabet " << c.alphabet << "\n";
  out << "start " << c.start << " " << c.init_out.to_literal() << "\n";
  for (const auto& [q, psi] : c.finals) {
    out << "final " << q << " " << psi.to_literal() << "\n";
  }
  std::vector<std::pair<std::pair<int, char>, std::pair<Element, int>>> rows(
      c.transitions.begin(), c.transitions.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.first < b.first;
  });
  for (const auto& [key, value] : rows) {
    out << "trans " << key.first << " " << key.second << " "
        << value.first.to_literal() << " " << value.second << "\n";
  }
  return out.str();
}

SubseqTransducer load_transducer_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  return parse_transducer(in, path);
}

void save_transducer_file(const SubseqTransducer& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << serialize_transducer(t);
}

}  // namespace mgefst

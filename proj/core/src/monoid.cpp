#include "mgefst/monoid.hpp"

#include <algorithm>
#include <cctype>

namespace mgefst {

namespace {

constexpr int kMaxProductDepth = 8;

bool valid_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

[[noreturn]] void bad_literal(std::string_view what, std::string_view text) {
  throw ParseError(std::string(what) + ": '" + std::string(text) + "'");
}

}  // namespace

MonoidDescriptor MonoidDescriptor::free_over(std::string_view alphabet) {
  if (alphabet.empty()) throw ParseError("free alphabet must be non-empty");
  std::string letters(alphabet);
  for (char c : letters) {
    if (!valid_letter(c)) bad_literal("letter outside [a-z0-9]", alphabet);
  }
  std::string sorted = letters;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    bad_literal("duplicate letter in alphabet", alphabet);
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Free;
  node->alphabet = std::move(letters);
  return MonoidDescriptor(std::move(node));
}

MonoidDescriptor MonoidDescriptor::tropical() {
  static const MonoidDescriptor instance(
      std::make_shared<Node>(Node{Kind::TropicalRational, "", nullptr, nullptr}));
  return instance;
}

MonoidDescriptor MonoidDescriptor::integer_group() {
  static const MonoidDescriptor instance(
      std::make_shared<Node>(Node{Kind::IntegerGroup, "", nullptr, nullptr}));
  return instance;
}

MonoidDescriptor MonoidDescriptor::product(const MonoidDescriptor& left,
                                           const MonoidDescriptor& right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->left = std::make_shared<MonoidDescriptor>(left);
  node->right = std::make_shared<MonoidDescriptor>(right);
  MonoidDescriptor d(std::move(node));
  if (d.depth() > kMaxProductDepth) {
    throw ParseError("product nesting deeper than 8");
  }
  return d;
}

const std::string& MonoidDescriptor::alphabet() const {
  if (kind() != Kind::Free) throw Error("alphabet() on non-free descriptor");
  return node_->alphabet;
}

const MonoidDescriptor& MonoidDescriptor::left() const {
  if (kind() != Kind::Product) throw Error("left() on non-product descriptor");
  return *node_->left;
}

const MonoidDescriptor& MonoidDescriptor::right() const {
  if (kind() != Kind::Product) throw Error("right() on non-product descriptor");
  return *node_->right;
}

int MonoidDescriptor::depth() const {
  if (kind() != Kind::Product) return 1;
  return 1 + std::max(left().depth(), right().depth());
}

bool MonoidDescriptor::has_group_component() const {
  switch (kind()) {
    case Kind::IntegerGroup:
      return true;
    case Kind::Product:
      return left().has_group_component() || right().has_group_component();
    default:
      return false;
  }
}

std::string MonoidDescriptor::to_literal() const {
  switch (kind()) {
    case Kind::Free:
      return "free:" + node_->alphabet;
    case Kind::TropicalRational:
      return "trop";
    case Kind::IntegerGroup:
      return "zgroup";
    case Kind::Product:
      return "prod(" + left().to_literal() + "," + right().to_literal() + ")";
  }
  throw Error("corrupt descriptor");
}

bool operator==(const MonoidDescriptor& a, const MonoidDescriptor& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case MonoidDescriptor::Kind::Free:
      return a.node_->alphabet == b.node_->alphabet;
    case MonoidDescriptor::Kind::Product:
      return a.left() == b.left() && a.right() == b.right();
    default:
      return true;
  }
}

namespace {

// Splits "prod(X,Y)" bodies at the top-level comma.
std::pair<std::string_view, std::string_view> split_pair_body(
    std::string_view body, std::string_view whole) {
  int level = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(') ++level;
    if (body[i] == ')') --level;
    if (body[i] == ',' && level == 0) {
      return {body.substr(0, i), body.substr(i + 1)};
    }
  }
  bad_literal("missing top-level comma", whole);
}

}  // namespace

MonoidDescriptor MonoidDescriptor::parse(std::string_view literal) {
  if (literal == "trop") return tropical();
  if (literal == "zgroup") return integer_group();
  if (literal.starts_with("free:")) return free_over(literal.substr(5));
  if (literal.starts_with("prod(") && literal.ends_with(")")) {
    auto body = literal.substr(5, literal.size() - 6);
    auto [l, r] = split_pair_body(body, literal);
    return product(parse(l), parse(r));
  }
  bad_literal("unknown monoid descriptor", literal);
}

// ---------------------------------------------------------------------------
// Element

Element Element::word(const MonoidDescriptor& d, std::string w) {
  if (d.kind() != MonoidDescriptor::Kind::Free) {
    throw DescriptorMismatchError("word payload needs a free descriptor");
  }
  for (char c : w) {
    if (d.alphabet().find(c) == std::string::npos) {
      throw UnknownLetterError(std::string("letter '") + c +
                               "' outside alphabet " + d.alphabet());
    }
  }
  Element e;
  e.desc_ = d;
  e.payload_ = std::move(w);
  return e;
}

Element Element::rational(Rational value) {
  if (value < 0) throw ParseError("tropical payload must be non-negative");
  Element e;
  e.desc_ = MonoidDescriptor::tropical();
  e.payload_ = std::move(value);
  return e;
}

Element Element::rational(long numerator, long denominator) {
  return rational(Rational(numerator, denominator));
}

Element Element::integer(Integer value) {
  Element e;
  e.desc_ = MonoidDescriptor::integer_group();
  e.payload_ = std::move(value);
  return e;
}

Element Element::pair(const MonoidDescriptor& d, Element first,
                      Element second) {
  if (d.kind() != MonoidDescriptor::Kind::Product) {
    throw DescriptorMismatchError("pair payload needs a product descriptor");
  }
  if (first.descriptor() != d.left() || second.descriptor() != d.right()) {
    throw DescriptorMismatchError(
        "pair components do not match the product descriptor");
  }
  Element e;
  e.desc_ = d;
  e.payload_ = std::make_shared<const std::pair<Element, Element>>(
      std::move(first), std::move(second));
  return e;
}

const std::string& Element::as_word() const {
  return std::get<std::string>(payload_);
}

const Element::Rational& Element::as_rational() const {
  return std::get<Rational>(payload_);
}

const Element::Integer& Element::as_integer() const {
  return std::get<Integer>(payload_);
}

const Element& Element::first() const { return std::get<Pair>(payload_)->first; }

const Element& Element::second() const {
  return std::get<Pair>(payload_)->second;
}

std::string Element::to_literal() const {
  switch (desc_.kind()) {
    case MonoidDescriptor::Kind::Free:
      return as_word().empty() ? "_" : as_word();
    case MonoidDescriptor::Kind::TropicalRational: {
      const Rational& r = as_rational();
      std::string s = numerator(r).str();
      if (denominator(r) != 1) s += "/" + denominator(r).str();
      return s;
    }
    case MonoidDescriptor::Kind::IntegerGroup:
      return as_integer().str();
    case MonoidDescriptor::Kind::Product:
      return "(" + first().to_literal() + "," + second().to_literal() + ")";
  }
  throw Error("corrupt element");
}

std::size_t Element::size_proxy() const {
  switch (desc_.kind()) {
    case MonoidDescriptor::Kind::Free:
      return as_word().size();
    case MonoidDescriptor::Kind::TropicalRational:
      return numerator(as_rational()).str().size() +
             denominator(as_rational()).str().size();
    case MonoidDescriptor::Kind::IntegerGroup:
      return as_integer().str().size();
    case MonoidDescriptor::Kind::Product:
      return first().size_proxy() + second().size_proxy();
  }
  return 0;
}

bool operator==(const Element& a, const Element& b) {
  return a.desc_ == b.desc_ &&
         std::visit(
             [&b](const auto& pa) -> bool {
               using T = std::decay_t<decltype(pa)>;
               const auto& pb = std::get<T>(b.payload_);
               if constexpr (std::is_same_v<T, Element::Pair>) {
                 return pa->first == pb->first && pa->second == pb->second;
               } else {
                 return pa == pb;
               }
             },
             a.payload_);
}

namespace {

Element parse_word(const MonoidDescriptor& d, std::string_view text) {
  if (text == "_") return Element::word(d, "");
  return Element::word(d, std::string(text));
}

Element parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Element::rational(Element::Rational(Element::Integer(std::string(text))));
    }
    Element::Integer p{std::string(text.substr(0, slash))};
    Element::Integer q{std::string(text.substr(slash + 1))};
    if (q <= 0) bad_literal("denominator must be positive", text);
    return Element::rational(Element::Rational(p, q));
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    bad_literal("bad rational", text);
  }
}

Element parse_integer(std::string_view text) {
  try {
    return Element::integer(Element::Integer(std::string(text)));
  } catch (const std::runtime_error&) {
    bad_literal("bad integer", text);
  }
}

}  // namespace

Element Element::parse(const MonoidDescriptor& d, std::string_view literal) {
  if (literal.empty()) bad_literal("empty element literal", literal);
  switch (d.kind()) {
    case MonoidDescriptor::Kind::Free:
      return parse_word(d, literal);
    case MonoidDescriptor::Kind::TropicalRational:
      return parse_rational(literal);
    case MonoidDescriptor::Kind::IntegerGroup:
      return parse_integer(literal);
    case MonoidDescriptor::Kind::Product: {
      if (!literal.starts_with("(") || !literal.ends_with(")")) {
        bad_literal("product literal must be (x,y)", literal);
      }
      auto body = literal.substr(1, literal.size() - 2);
      auto [l, r] = split_pair_body(body, literal);
      return pair(d, parse(d.left(), l), parse(d.right(), r));
    }
  }
  bad_literal("corrupt descriptor", literal);
}

// ---------------------------------------------------------------------------
// Operations

namespace detail {
void require_same_descriptor(const Element& a, const Element& b) {
  if (a.descriptor() != b.descriptor()) {
    throw DescriptorMismatchError("descriptor mismatch: " +
                                  a.descriptor().to_literal() + " vs " +
                                  b.descriptor().to_literal());
  }
}
}  // namespace detail

Element op(const Element& a, const Element& b) {
  detail::require_same_descriptor(a, b);
  switch (a.descriptor().kind()) {
    case MonoidDescriptor::Kind::Free:
      return Element::word(a.descriptor(), a.as_word() + b.as_word());
    case MonoidDescriptor::Kind::TropicalRational:
      return Element::rational(a.as_rational() + b.as_rational());
    case MonoidDescriptor::Kind::IntegerGroup:
      return Element::integer(a.as_integer() + b.as_integer());
    case MonoidDescriptor::Kind::Product:
      return Element::pair(a.descriptor(), op(a.first(), b.first()),
                           op(a.second(), b.second()));
  }
  throw Error("corrupt element");
}

Element unit(const MonoidDescriptor& d) {
  switch (d.kind()) {
    case MonoidDescriptor::Kind::Free:
      return Element::word(d, "");
    case MonoidDescriptor::Kind::TropicalRational:
      return Element::rational(Element::Rational(0));
    case MonoidDescriptor::Kind::IntegerGroup:
      return Element::integer(Element::Integer(0));
    case MonoidDescriptor::Kind::Product:
      return Element::pair(d, unit(d.left()), unit(d.right()));
  }
  throw Error("corrupt descriptor");
}

bool le(const Element& a, const Element& b) {
  detail::require_same_descriptor(a, b);
  switch (a.descriptor().kind()) {
    case MonoidDescriptor::Kind::Free:
      return b.as_word().starts_with(a.as_word());
    case MonoidDescriptor::Kind::TropicalRational:
      return a.as_rational() <= b.as_rational();
    case MonoidDescriptor::Kind::IntegerGroup:
      return true;
    case MonoidDescriptor::Kind::Product:
      return le(a.first(), b.first()) && le(a.second(), b.second());
  }
  throw Error("corrupt element");
}

Element quotient(const Element& b, const Element& a) {
  detail::require_same_descriptor(a, b);
  if (!le(a, b)) {
    throw NotAPrefixError("quotient undefined: " + a.to_literal() +
                          " does not left-divide " + b.to_literal());
  }
  switch (a.descriptor().kind()) {
    case MonoidDescriptor::Kind::Free:
      return Element::word(a.descriptor(),
                           b.as_word().substr(a.as_word().size()));
    case MonoidDescriptor::Kind::TropicalRational:
      return Element::rational(b.as_rational() - a.as_rational());
    case MonoidDescriptor::Kind::IntegerGroup:
      return Element::integer(b.as_integer() - a.as_integer());
    case MonoidDescriptor::Kind::Product:
      return Element::pair(a.descriptor(), quotient(b.first(), a.first()),
                           quotient(b.second(), a.second()));
  }
  throw Error("corrupt element");
}

std::optional<Element> join(const Element& a, const Element& b) {
  detail::require_same_descriptor(a, b);
  switch (a.descriptor().kind()) {
    case MonoidDescriptor::Kind::Free: {
      if (le(a, b)) return b;
      if (le(b, a)) return a;
      return std::nullopt;
    }
    case MonoidDescriptor::Kind::TropicalRational:
      return a.as_rational() >= b.as_rational() ? a : b;
    case MonoidDescriptor::Kind::IntegerGroup:
      return a.as_integer() >= b.as_integer() ? a : b;
    case MonoidDescriptor::Kind::Product: {
      auto l = join(a.first(), b.first());
      if (!l) return std::nullopt;
      auto r = join(a.second(), b.second());
      if (!r) return std::nullopt;
      return Element::pair(a.descriptor(), std::move(*l), std::move(*r));
    }
  }
  throw Error("corrupt element");
}

Element meet(const Element& a, const Element& b) {
  detail::require_same_descriptor(a, b);
  switch (a.descriptor().kind()) {
    case MonoidDescriptor::Kind::Free: {
      const std::string& x = a.as_word();
      const std::string& y = b.as_word();
      std::size_t n = 0;
      while (n < x.size() && n < y.size() && x[n] == y[n]) ++n;
      return Element::word(a.descriptor(), x.substr(0, n));
    }
    case MonoidDescriptor::Kind::TropicalRational:
      return a.as_rational() <= b.as_rational() ? a : b;
    case MonoidDescriptor::Kind::IntegerGroup:
      return a.as_integer() <= b.as_integer() ? a : b;
    case MonoidDescriptor::Kind::Product:
      return Element::pair(a.descriptor(), meet(a.first(), b.first()),
                           meet(a.second(), b.second()));
  }
  throw Error("corrupt element");
}

bool is_invertible(const Element& a) {
  switch (a.descriptor().kind()) {
    case MonoidDescriptor::Kind::Free:
      return a.as_word().empty();
    case MonoidDescriptor::Kind::TropicalRational:
      return a.as_rational() == 0;
    case MonoidDescriptor::Kind::IntegerGroup:
      return true;
    case MonoidDescriptor::Kind::Product:
      return is_invertible(a.first()) && is_invertible(a.second());
  }
  throw Error("corrupt element");
}

std::optional<std::vector<Element>> mge_tuple(std::span<const Element> as) {
  if (as.empty()) throw PreconditionError("mge_tuple needs a non-empty tuple");
  Element folded = as[0];
  for (std::size_t i = 1; i < as.size(); ++i) {
    auto j = join(folded, as[i]);
    if (!j) return std::nullopt;
    folded = std::move(*j);
  }
  std::vector<Element> out;
  out.reserve(as.size());
  for (const Element& a : as) out.push_back(quotient(folded, a));
  return out;
}

Element wlp_witness(const Element& u, const Element& v) {
  detail::require_same_descriptor(u, v);
  return unit(u.descriptor());
}

}  // namespace mgefst

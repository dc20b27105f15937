#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mgefst/errors.hpp"

namespace mgefst {

/// Identifies which monoid instance a value lives in. Four instances are
/// supported: the free monoid over a finite alphabet, non-negative
/// rationals under addition, signed integers under addition, and the
/// Cartesian product of two instances. Descriptors are immutable and
/// cheap to copy.
class MonoidDescriptor {
 public:
  enum class Kind { Free, TropicalRational, IntegerGroup, Product };

  /// Free monoid over `alphabet`; letters must be in [a-z0-9], non-empty,
  /// no duplicates.
  static MonoidDescriptor free_over(std::string_view alphabet);
  static MonoidDescriptor tropical();
  static MonoidDescriptor integer_group();
  /// Cartesian product; nesting depth is capped at 8.
  static MonoidDescriptor product(const MonoidDescriptor& left,
                                  const MonoidDescriptor& right);

  /// Parses `free:<letters>` | `trop` | `zgroup` | `prod(<d>,<d>)`.
  static MonoidDescriptor parse(std::string_view literal);

  Kind kind() const { return node_->kind; }
  const std::string& alphabet() const;
  const MonoidDescriptor& left() const;
  const MonoidDescriptor& right() const;

  int depth() const;
  /// True if any component is the integer group (every element
  /// invertible in that coordinate).
  bool has_group_component() const;

  std::string to_literal() const;

  friend bool operator==(const MonoidDescriptor& a, const MonoidDescriptor& b);
  friend bool operator!=(const MonoidDescriptor& a, const MonoidDescriptor& b) {
    return !(a == b);
  }

 private:
  struct Node {
    Kind kind;
    std::string alphabet;                               // Free only
    std::shared_ptr<const MonoidDescriptor> left, right;  // Product only
  };

  explicit MonoidDescriptor(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// A value of one monoid instance. The payload is a word for Free, an
/// exact non-negative rational for TropicalRational (kept in lowest
/// terms by the underlying cpp_rational), an exact integer for
/// IntegerGroup, and a pair of Elements for Product. Elements are
/// immutable values; all operations on them are pure.
class Element {
 public:
  using Rational = boost::multiprecision::cpp_rational;
  using Integer = boost::multiprecision::cpp_int;

  Element() = default;  // empty shell; only assignment is valid afterwards

  static Element word(const MonoidDescriptor& d, std::string w);
  static Element rational(Rational value);
  static Element rational(long numerator, long denominator);
  static Element integer(Integer value);
  static Element pair(const MonoidDescriptor& d, Element first,
                      Element second);

  /// Parses an element literal for descriptor `d`:
  ///   Free: bare word, `_` for the empty word;
  ///   TropicalRational: `p` or `p/q`, non-negative;
  ///   IntegerGroup: optionally signed integer;
  ///   Product: `(<lit>,<lit>)` with no internal whitespace.
  static Element parse(const MonoidDescriptor& d, std::string_view literal);

  const MonoidDescriptor& descriptor() const { return desc_; }

  const std::string& as_word() const;
  const Rational& as_rational() const;
  const Integer& as_integer() const;
  const Element& first() const;
  const Element& second() const;

  std::string to_literal() const;

  /// Rough size measure (word length, digit count, component sum); used
  /// for iteration caps, not for semantics.
  std::size_t size_proxy() const;

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) {
    return !(a == b);
  }

 private:
  using Pair = std::shared_ptr<const std::pair<Element, Element>>;

  MonoidDescriptor desc_ = MonoidDescriptor::tropical();
  std::variant<std::string, Rational, Integer, Pair> payload_ = Rational(0);
};

/// a ∘ b in the instance's semantics: concatenation / rational addition /
/// integer addition / componentwise.
Element op(const Element& a, const Element& b);

/// The unit element of the instance.
Element unit(const MonoidDescriptor& d);

/// The left-divisibility pre-order: true iff some c satisfies op(a,c) = b.
bool le(const Element& a, const Element& b);

/// The unique c with op(a,c) = b. Requires le(a, b).
Element quotient(const Element& b, const Element& a);

/// A least upper bound of {a, b} under le, or nullopt when {a, b} has no
/// upper bound. Canonical witnesses: Free picks the longer word when one
/// extends the other; TropicalRational and IntegerGroup pick max;
/// Product works componentwise.
std::optional<Element> join(const Element& a, const Element& b);

/// A greatest lower bound of {a, b}; total in all four instances.
/// Free picks the longest common prefix; TropicalRational and
/// IntegerGroup pick min; Product works componentwise.
Element meet(const Element& a, const Element& b);

bool is_invertible(const Element& a);

/// Most general equaliser of a non-empty tuple: with J the folded join
/// of the inputs, returns <quotient(J, a_1), ..., quotient(J, a_n)>, or
/// nullopt when some intermediate join is undefined.
std::optional<std::vector<Element>> mge_tuple(std::span<const Element> as);

/// A witness x such that any infinite sequence {a_n} with
/// u·a_{n+1} = v·a_n forces u·x ≤ v·x and x ≤ a_n. All four instances
/// satisfy the stronger limit-prefix property, so the unit is always a
/// valid witness.
Element wlp_witness(const Element& u, const Element& v);

namespace detail {
/// Throws DescriptorMismatchError unless both elements carry equal
/// descriptors.
void require_same_descriptor(const Element& a, const Element& b);
}  // namespace detail

}  // namespace mgefst

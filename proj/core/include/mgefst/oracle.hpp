#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "mgefst/transducer.hpp"
#include "mgefst/witness.hpp"

namespace mgefst {

/// A deterministic word-to-element function presented as a black box,
/// backed either by a reference machine or by a finite table. Table
/// oracles return nullopt outside the table. Queries are pure and
/// repeatable; the transducer backing keeps an internal prefix memo so
/// that query batches with shared prefixes cost one step per new letter.
class FunctionOracle {
 public:
  static FunctionOracle from_transducer(SubseqTransducer machine);
  static FunctionOracle from_table(MonoidDescriptor descriptor,
                                   std::string alphabet,
                                   std::map<std::string, Element> entries);

  const MonoidDescriptor& descriptor() const;
  const std::string& alphabet() const;

  /// f(w), or nullopt when w is outside the domain. Throws
  /// UnknownLetterError for letters outside the alphabet.
  std::optional<Element> query(std::string_view w) const;

  QueryFn as_query_fn() const;

 private:
  struct Backing;
  explicit FunctionOracle(std::shared_ptr<Backing> backing);
  std::shared_ptr<Backing> backing_;
};

/// Reads the oracle table format:
///   monoid <descriptor-literal>
///   alphabet <letters>
///   map <word-or-_> <element-literal>   (zero or more)
/// A file with no map lines denotes the empty-domain function.
FunctionOracle parse_oracle_table(std::istream& in,
                                  std::string_view source_name = "<input>");
FunctionOracle load_oracle_table_file(const std::string& path);

/// Loads either an oracle table or a machine file (detected by its
/// directives) and presents it as an oracle.
FunctionOracle load_oracle_any_file(const std::string& path);

}  // namespace mgefst

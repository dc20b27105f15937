#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "mgefst/transducer.hpp"

namespace mgefst {

/// Reads the line-based machine format:
///   monoid <descriptor-literal>
///   alphabet <letters>
///   start <id> <element-literal>
///   final <id> <element-literal>        (one per final state)
///   trans <src> <letter> <element-literal> <dst>
/// `#` starts a comment; tokens are whitespace-separated; unknown
/// directives are errors. Diagnostics carry `source_name:line`.
SubseqTransducer parse_transducer(std::istream& in,
                                  std::string_view source_name = "<input>");
SubseqTransducer parse_transducer_text(std::string_view text,
                                       std::string_view source_name = "<text>");

/// Canonical text form: states renumbered BFS-from-start, final lines
/// sorted by state, trans lines sorted by (state, letter). Parsing the
/// output and serialising again reproduces it byte for byte.
std::string serialize_transducer(const SubseqTransducer& t);

SubseqTransducer load_transducer_file(const std::string& path);
void save_transducer_file(const SubseqTransducer& t, const std::string& path);

}  // namespace mgefst

#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ccon/graph.hpp"

namespace ccon {

enum class ParseErrorKind {
  malformed,       // wrong arity or non-integer token
  self_loop,
  out_of_range,    // endpoint outside the declared/allowed id range
  missing_header,  // Pajek file without *Vertices
  undirected,      // Pajek *Edges section
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what);

  ParseErrorKind kind() const noexcept { return kind_; }
  /// 1-based line number; 0 when the error is not tied to one line.
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// Reads "u v" lines (edge u -> v). Blank lines and '#' comments are skipped;
/// the comment directive "# nodes N" raises the node count to at least N.
/// index_base must be 0 or 1. Duplicate lines collapse.
DirectedGraph load_edge_list(std::istream& in, int index_base = 0);

/// Reads the directed Pajek subset: "*Vertices N" then "*Arcs" lines with
/// 1-based endpoints (extra tokens such as weights are ignored). Vertex
/// labels and unknown sections are skipped; "*Edges" is rejected.
DirectedGraph load_pajek(std::istream& in);

/// Writes "# nodes N" followed by one "u v" line per edge in sorted order.
void write_edge_list(const DirectedGraph& g, std::ostream& out, int index_base = 0);

}  // namespace ccon

#include "ccon/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace ccon {

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      kind_(kind),
      line_(line) {}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) tokens.push_back(s.substr(start, i - start));
  }
  return tokens;
}

std::optional<std::int64_t> parse_int(std::string_view token) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

constexpr std::int64_t kMaxNodeId = std::numeric_limits<NodeId>::max() - 1;

}  // namespace

DirectedGraph load_edge_list(std::istream& in, int index_base) {
  if (index_base != 0 && index_base != 1) {
    throw std::invalid_argument("index base must be 0 or 1");
  }
  std::vector<Edge> edges;
  std::int64_t node_count = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.front().starts_with('#')) {
      // "# nodes N" (the '#' may be glued to the keyword or not).
      std::vector<std::string_view> rest(tokens.begin(), tokens.end());
      if (rest.front() == "#") rest.erase(rest.begin());
      else rest.front().remove_prefix(1);
      if (rest.size() == 2 && rest[0] == "nodes") {
        if (const auto n = parse_int(rest[1]); n && *n >= 0 && *n <= kMaxNodeId + 1) {
          node_count = std::max(node_count, *n);
        }
      }
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError(ParseErrorKind::malformed, line_no,
                       "expected two node ids, found " + std::to_string(tokens.size()) + " tokens");
    }
    const auto u = parse_int(tokens[0]);
    const auto v = parse_int(tokens[1]);
    if (!u || !v) {
      throw ParseError(ParseErrorKind::malformed, line_no, "node ids must be integers");
    }
    const std::int64_t su = *u - index_base;
    const std::int64_t sv = *v - index_base;
    if (su < 0 || sv < 0 || su > kMaxNodeId || sv > kMaxNodeId) {
      throw ParseError(ParseErrorKind::out_of_range, line_no,
                       "node id out of range for " + std::to_string(index_base) + "-based input");
    }
    if (su == sv) {
      throw ParseError(ParseErrorKind::self_loop, line_no,
                       "self-loop on node " + std::to_string(*u) + " rejected");
    }
    edges.push_back({static_cast<NodeId>(su), static_cast<NodeId>(sv)});
    node_count = std::max(node_count, std::max(su, sv) + 1);
  }
  if (in.bad()) {
    throw std::runtime_error("read error while loading edge list");
  }
  return DirectedGraph::from_edges(static_cast<NodeId>(node_count), std::move(edges));
}

DirectedGraph load_pajek(std::istream& in) {
  enum class Section { none, vertices, arcs, other };
  Section section = Section::none;
  std::optional<std::int64_t> node_count;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('%')) continue;
    if (tokens.front().starts_with('*')) {
      const std::string keyword = lower(tokens.front());
      if (keyword == "*vertices") {
        const auto n = tokens.size() >= 2 ? parse_int(tokens[1]) : std::nullopt;
        if (!n || *n < 0 || *n > kMaxNodeId + 1) {
          throw ParseError(ParseErrorKind::malformed, line_no, "*Vertices needs a node count");
        }
        node_count = *n;
        section = Section::vertices;
      } else if (keyword == "*arcs") {
        if (!node_count) {
          throw ParseError(ParseErrorKind::missing_header, line_no,
                           "*Arcs section before *Vertices header");
        }
        section = Section::arcs;
      } else if (keyword.starts_with("*edges")) {
        throw ParseError(ParseErrorKind::undirected, line_no,
                         "undirected input: *Edges sections are not supported");
      } else {
        section = Section::other;
      }
      continue;
    }
    if (section != Section::arcs) continue;

    if (tokens.size() < 2) {
      throw ParseError(ParseErrorKind::malformed, line_no, "arc line needs two endpoints");
    }
    const auto u = parse_int(tokens[0]);
    const auto v = parse_int(tokens[1]);
    if (!u || !v) {
      throw ParseError(ParseErrorKind::malformed, line_no, "arc endpoints must be integers");
    }
    if (*u < 1 || *v < 1 || *u > *node_count || *v > *node_count) {
      throw ParseError(ParseErrorKind::out_of_range, line_no,
                       "arc endpoint outside [1, " + std::to_string(*node_count) + "]");
    }
    if (*u == *v) {
      throw ParseError(ParseErrorKind::self_loop, line_no,
                       "self-loop on vertex " + std::to_string(*u) + " rejected");
    }
    edges.push_back({static_cast<NodeId>(*u - 1), static_cast<NodeId>(*v - 1)});
  }
  if (in.bad()) {
    throw std::runtime_error("read error while loading Pajek file");
  }
  if (!node_count) {
    throw ParseError(ParseErrorKind::missing_header, 0, "missing *Vertices header");
  }
  return DirectedGraph::from_edges(static_cast<NodeId>(*node_count), std::move(edges));
}

void write_edge_list(const DirectedGraph& g, std::ostream& out, int index_base) {
  if (index_base != 0 && index_base != 1) {
    throw std::invalid_argument("index base must be 0 or 1");
  }
  out << "# nodes " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << (e.source + index_base) << ' ' << (e.target + index_base) << '\n';
  }
}

}  // namespace ccon

#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperham/hypergraph.hpp"

namespace hyperham {

/// Raised for malformed .h3 input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// .h3 text format: a header line "n m" followed by m lines "a b c" (0-indexed).
// Writing is canonical: sorted triples in lexicographic order, one per line.

inline void write_h3(std::ostream& out, const Hypergraph3& H) {
  out << H.n() << ' ' << H.edge_count() << '\n';
  for (const auto& [a, b, c] : H.edges()) out << a << ' ' << b << ' ' << c << '\n';
}

inline std::string to_h3_string(const Hypergraph3& H) {
  std::ostringstream os;
  write_h3(os, H);
  return os.str();
}

inline Hypergraph3 read_h3(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&](std::string& into) -> bool {
    while (std::getline(in, into)) {
      ++line_no;
      const auto pos = into.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (into[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_content_line(line)) throw FormatError("h3: empty input");
  long long n = -1, m = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m) || n < 0 || m < 0 || (hs >> extra))
      throw FormatError("h3: line " + std::to_string(line_no) + ": expected header 'n m'");
  }
  std::vector<Triple> triples;
  triples.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(line))
      throw FormatError("h3: expected " + std::to_string(m) + " edges, found " +
                        std::to_string(i));
    std::istringstream ls(line);
    long long a = -1, b = -1, c = -1;
    std::string extra;
    if (!(ls >> a >> b >> c) || (ls >> extra) || a < 0 || b < 0 || c < 0)
      throw FormatError("h3: line " + std::to_string(line_no) + ": expected 'a b c'");
    triples.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), static_cast<Vertex>(c)});
  }
  if (next_content_line(line))
    throw FormatError("h3: line " + std::to_string(line_no) + ": trailing content after " +
                      std::to_string(m) + " edges");
  try {
    return Hypergraph3::from_edges(static_cast<std::size_t>(n), triples);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("h3: ") + e.what());
  }
}

inline Hypergraph3 read_h3_string(const std::string& text) {
  std::istringstream is(text);
  return read_h3(is);
}

inline Hypergraph3 read_h3_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("h3: cannot open '" + path + "'");
  return read_h3(in);
}

inline void write_h3_file(const std::string& path, const Hypergraph3& H) {
  std::ofstream out(path);
  if (!out) throw FormatError("h3: cannot write '" + path + "'");
  write_h3(out, H);
}

/// FNV-1a 64 of the canonical .h3 text, as 16 hex digits.
inline std::string digest(const Hypergraph3& H) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_h3_string(H)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 15];
    h >>= 4;
  }
  return out;
}

}  // namespace hyperham

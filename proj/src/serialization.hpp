#pragma once

// Text snapshot helpers. Doubles are written as hex floats so snapshots round-trip exactly.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace actstream::detail {

inline void write_double(std::ostream& out, double v, char sep = '\n') {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  out << buf << sep;
}

inline std::string read_token(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw std::runtime_error("truncated model snapshot");
  return tok;
}

inline double read_double(std::istream& in) {
  std::string tok = read_token(in);
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) throw std::runtime_error("bad number in snapshot: " + tok);
  return v;
}

inline std::size_t read_size(std::istream& in) {
  std::string tok = read_token(in);
  std::size_t used = 0;
  unsigned long long v = std::stoull(tok, &used);
  if (used != tok.size()) throw std::runtime_error("bad count in snapshot: " + tok);
  return static_cast<std::size_t>(v);
}

inline void expect(std::istream& in, const std::string& tag) {
  std::string tok = read_token(in);
  if (tok != tag) throw std::runtime_error("snapshot: expected '" + tag + "', got '" + tok + "'");
}

inline void write_rng(std::ostream& out, const std::mt19937_64& rng) { out << rng << '\n'; }

inline void read_rng(std::istream& in, std::mt19937_64& rng) {
  if (!(in >> rng)) throw std::runtime_error("snapshot: bad rng state");
}

}  // namespace actstream::detail

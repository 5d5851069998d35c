#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "akx/set_family.hpp"

namespace akx {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// SETFAM 1: header line, n=<int>, then one member per line as ascending
// comma-separated 1-based elements; "{}" is the empty set.
inline SetFamily read_setfam(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&](bool required) {
    while (std::getline(in, line)) {
      ++lineno;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) return true;
    }
    if (required) throw ParseError(lineno + 1, "unexpected end of file");
    return false;
  };

  next_line(true);
  if (line != "SETFAM 1") throw ParseError(lineno, "expected 'SETFAM 1' header");
  next_line(true);
  if (line.rfind("n=", 0) != 0) throw ParseError(lineno, "expected 'n=<int>'");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParseError(lineno, "bad n");
  }
  if (n < 0 || n > kMaxPoints) throw ParseError(lineno, "n out of range 0..24");

  SetFamily f(n);
  while (next_line(false)) {
    std::uint32_t mask = 0;
    if (line != "{}") {
      std::istringstream ss(line);
      std::string tok;
      int prev = 0;
      while (std::getline(ss, tok, ',')) {
        int v = 0;
        try {
          std::size_t used = 0;
          v = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad element '" + tok + "'");
        }
        if (v < 1 || v > n) throw ParseError(lineno, "element out of range");
        if (v <= prev) throw ParseError(lineno, "elements must be strictly ascending");
        prev = v;
        mask |= 1u << (v - 1);
      }
      if (mask == 0) throw ParseError(lineno, "empty member must be written as {}");
    }
    if (f.contains(mask)) throw ParseError(lineno, "duplicate member");
    f.add(mask);
  }
  return f;
}

inline SetFamily read_setfam_string(const std::string& text) {
  std::istringstream in(text);
  return read_setfam(in);
}

inline void write_setfam(std::ostream& out, const SetFamily& f) {
  out << "SETFAM 1\n" << "n=" << f.n << "\n";
  for (auto mask : f.members()) out << mask_str(mask, f.n) << "\n";
}

inline std::string write_setfam_string(const SetFamily& f) {
  std::ostringstream out;
  write_setfam(out, f);
  return out.str();
}

}  // namespace akx

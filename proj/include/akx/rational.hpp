#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace akx {

// Exact arithmetic everywhere: measures are compared for equality at
// breakpoints, so floating point is never used for decisions.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// boost's two-argument constructor rejects negative denominators instead of
// normalizing, so construction goes through here.
inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  if (den < 0) { num = -num; den = -den; }
  return Rat(num, den);
}

inline Rat make_rat(long long num, long long den) {
  return make_rat(Int(num), Int(den));
}

inline Rat rat_pow(const Rat& x, unsigned e) {
  if (e == 0) return Rat(1);
  return Rat(pow(numerator(x), e), pow(denominator(x), e));
}

inline Int int_pow(const Int& x, unsigned e) { return pow(x, e); }

// Falling power x(x-1)...(x-e+1).
inline Int falling(const Int& x, unsigned e) {
  Int out = 1;
  for (unsigned i = 0; i < e; ++i) out *= x - i;
  return out;
}

inline Int binom(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int out = 1;
  for (unsigned i = 0; i < k; ++i) {
    out *= n - i;
    out /= i + 1;  // always divides: out is binom(n, i+1) * i! / i!
  }
  return out;
}

// Parses "NUM/DEN" or "NUM" with optional leading minus on NUM.
inline std::optional<Rat> parse_rat(const std::string& s) {
  auto slash = s.find('/');
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!digits(s)) return std::nullopt;
      return Rat(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num) || !digits(den)) return std::nullopt;
    Int d(den);
    if (d == 0) return std::nullopt;
    return make_rat(Int(num), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::string rat_str(const Rat& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << "/" << denominator(x);
  return os.str();
}

inline double rat_double(const Rat& x) { return static_cast<double>(x); }

}  // namespace akx

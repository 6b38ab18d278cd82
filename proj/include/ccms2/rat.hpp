#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "error.hpp"

namespace ccms2 {

using BigInt = boost::multiprecision::cpp_int;
// Always in lowest terms with positive denominator (maintained by the backend).
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

inline bool rat_is_integer(const Rat& r) { return rat_den(r) == 1; }

// Integers print bare ("3", "-2"); proper fractions print "p/q".
inline std::string rat_to_string(const Rat& r) {
  if (rat_is_integer(r)) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

// Accepts "p", "-p", "p/q" with optional sign on the numerator.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw Error(ErrorKind::parse, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::parse, "zero denominator in rational literal '" + s + "'");
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse, "bad rational literal '" + s + "'");
  }
}

inline Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat acc = 0;
  std::size_t k = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < k; ++i)
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  return acc;
}

} // namespace ccms2

#include "ot/rational.hpp"

#include <charconv>

#include "ot/scalar.hpp"

namespace ot {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

Rat parse_rational(const std::string& text) {
  const std::string t = trim(text);
  require(!t.empty(), Errc::parse_error, "empty rational literal");
  const size_t slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rat(boost::multiprecision::cpp_int(t));
    const std::string num = trim(t.substr(0, slash));
    const std::string den = trim(t.substr(slash + 1));
    require(!num.empty() && !den.empty(), Errc::parse_error,
            "rational literal must look like p/q: " + text);
    boost::multiprecision::cpp_int p(num), q(den);
    require(q != 0, Errc::parse_error, "zero denominator: " + text);
    return Rat(p, q);
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    raise(Errc::parse_error, "invalid rational literal: " + text);
  }
}

std::string format_rational(const Rat& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Shortest round-trip rendering, locale-independent.
std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace ot

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "ot/error.hpp"

namespace ot {

// Exact rational scalar used in rational mode. Conversion from double is
// exact (every finite double is a dyadic rational). Expression templates are
// off so arithmetic yields plain values usable in generic code.
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_from_double(double x) { return Rat(x); }

// Parses "p/q", "p", or a plain integer string into an exact rational.
Rat parse_rational(const std::string& text);

// Canonical "p/q" rendering; integers render without the "/q" part.
std::string format_rational(const Rat& r);

}  // namespace ot

#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "hcs/errors.hpp"

namespace hcs {

// Exact arithmetic for transition matrices, weights and combinatorial counts.
// All quantities that appear in this project have tiny numerators and
// denominators (gadget weights like 1/12, floor counts, set fractions), so a
// 64-bit rational is comfortable.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Canonical "p/q" text form, e.g. "1/12", "-3/8", "5/1".
std::string to_string(const Rat& r);

// Accepts "p", "p/q" and finite decimals such as "0.125" or "-1.5".
Rat parse_rational(const std::string& text);

// floor(r) as an integer, exact for negative values too.
long long rat_floor(const Rat& r);

using RatMatrix = std::vector<std::vector<Rat>>;

}  // namespace hcs

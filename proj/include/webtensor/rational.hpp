#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace webtensor {

// Exact rational scalar. Always stored reduced with positive denominator.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(BigInt(num)) / Rat(BigInt(den));
}

// Parses "p" or "p/q" with optional leading '-' on either part; q must be
// nonzero. Returns nullopt on any malformed input instead of throwing so
// the manifest reader can attach line/field context.
std::optional<Rat> parse_rat(std::string_view text);

// Formats as "p" or "p/q" (q > 1 only), matching the input grammar.
std::string rat_to_string(const Rat& value);

}  // namespace webtensor

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>

namespace ppa {

/// Arbitrary-precision natural number used throughout the bound calculus.
using Natural = boost::multiprecision::cpp_int;

/// Number of significant bits; 0 for zero.
std::size_t bit_length(const Natural& x);

std::string to_string(const Natural& x);

/// Parses a non-negative decimal integer; throws std::invalid_argument.
Natural parse_natural(const std::string& text);

/// The value if it fits in 64 bits.
std::optional<std::uint64_t> to_u64(const Natural& x);

/// Least m >= 0 with exp(m) >= x. Decided exactly by comparing x against
/// fixed-point enclosures of e^m, starting at 256 fractional bits and
/// doubling the precision until the comparison is decided. Throws
/// std::domain_error for x = 0.
Natural ceil_ln(const Natural& x);

/// ceil(scale * e^k), decided exactly the same way. Throws
/// std::overflow_error when the result would need more than max_bits bits.
Natural ceil_scaled_exp(const Natural& scale, const Natural& k, std::size_t max_bits);

}  // namespace ppa

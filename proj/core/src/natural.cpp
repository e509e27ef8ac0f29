#include "ppa/natural.hpp"

#include <cmath>
#include <stdexcept>

namespace ppa {
namespace {

constexpr std::size_t kInitialPrecision = 256;

Natural shift_ceil(const Natural& v, std::size_t bits) {
  Natural q = v >> bits;
  if ((q << bits) != v) ++q;
  return q;
}

// lo <= value * 2^frac_bits <= hi
struct Enclosure {
  Natural lo;
  Natural hi;
  std::size_t frac_bits;
};

Enclosure e_enclosure(std::size_t frac_bits) {
  // term_j = floor(2^F / j!) exactly, since floor(floor(a/b)/c) = floor(a/(bc)).
  Natural term = Natural(1) << frac_bits;
  Natural sum = 0;
  unsigned j = 0;
  while (term != 0) {
    sum += term;
    ++j;
    term /= j;
  }
  // Each of the j floored terms loses < 1; the tail after the first zero
  // term is < 2.
  return {sum, sum + j + 3, frac_bits};
}

Enclosure exp_enclosure(std::uint64_t m, std::size_t frac_bits) {
  Enclosure base = e_enclosure(frac_bits);
  Enclosure acc{Natural(1) << frac_bits, Natural(1) << frac_bits, frac_bits};
  while (m != 0) {
    if (m & 1u) {
      acc.lo = (acc.lo * base.lo) >> frac_bits;
      acc.hi = shift_ceil(acc.hi * base.hi, frac_bits);
    }
    m >>= 1;
    if (m != 0) {
      base.lo = (base.lo * base.lo) >> frac_bits;
      base.hi = shift_ceil(base.hi * base.hi, frac_bits);
    }
  }
  return acc;
}

std::size_t working_bits(std::uint64_t m, std::size_t precision) {
  return precision + bit_length(Natural(m)) + 8;
}

// Whether e^m >= x, for x >= 1.
bool exp_at_least(std::uint64_t m, const Natural& x) {
  if (m == 0) return x <= 1;
  for (std::size_t prec = kInitialPrecision;; prec *= 2) {
    const std::size_t f = working_bits(m, prec);
    const Enclosure enc = exp_enclosure(m, f);
    const Natural scaled = x << f;
    if (enc.lo >= scaled) return true;
    if (enc.hi < scaled) return false;
    // e^m is irrational for m >= 1, so a finer enclosure always decides.
  }
}

double approx_ln(const Natural& x) {
  const std::size_t bits = bit_length(x);
  if (bits <= 60) return std::log(static_cast<double>(static_cast<std::uint64_t>(x)));
  const std::size_t drop = bits - 60;
  const auto top = static_cast<std::uint64_t>(x >> drop);
  return std::log(static_cast<double>(top)) + static_cast<double>(drop) * std::log(2.0);
}

}  // namespace

std::size_t bit_length(const Natural& x) {
  if (x <= 0) return 0;
  return boost::multiprecision::msb(x) + 1;
}

std::string to_string(const Natural& x) { return x.str(); }

Natural parse_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a natural number: '" + text + "'");
  return Natural(text);
}

std::optional<std::uint64_t> to_u64(const Natural& x) {
  if (x < 0 || bit_length(x) > 64) return std::nullopt;
  return static_cast<std::uint64_t>(x);
}

Natural ceil_ln(const Natural& x) {
  if (x <= 0) throw std::domain_error("ceil_ln requires x >= 1");
  if (x == 1) return 0;
  auto m = static_cast<std::uint64_t>(std::max(1.0, std::ceil(approx_ln(x))));
  while (!exp_at_least(m, x)) ++m;
  while (m > 0 && exp_at_least(m - 1, x)) --m;
  return m;
}

Natural ceil_scaled_exp(const Natural& scale, const Natural& k, std::size_t max_bits) {
  if (scale == 0) return 0;
  if (k == 0) return scale;
  const auto small_k = to_u64(k);
  const double est_bits =
      static_cast<double>(bit_length(scale)) +
      (small_k ? static_cast<double>(*small_k) : 1e300) * 1.4426950408889634;
  if (!small_k || est_bits > static_cast<double>(max_bits) + 2.0)
    throw std::overflow_error("ceil_scaled_exp exceeds magnitude cap");
  for (std::size_t prec = kInitialPrecision;; prec *= 2) {
    const std::size_t f = working_bits(*small_k, prec) + bit_length(scale);
    const Enclosure enc = exp_enclosure(*small_k, f);
    const Natural lo = shift_ceil(scale * enc.lo, f);
    const Natural hi = shift_ceil(scale * enc.hi, f);
    if (lo == hi) {
      if (bit_length(lo) > max_bits)
        throw std::overflow_error("ceil_scaled_exp exceeds magnitude cap");
      return lo;
    }
  }
}

}  // namespace ppa

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qps {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;

/// Canonical "p/q" form; zero is "0/1".
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Accepts "p/q", "p" or "-p/q". Throws SchemaError.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Integer& v) { return sgn(v); }
inline int sign(const Rational& v) { return sgn(v); }

bool is_integer(const Rational& value);
Integer floor(const Rational& value);
Integer ceil(const Rational& value);

/// Mathematical remainder in [0, m), m > 0.
Integer mod(const Integer& a, const Integer& m);
std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mod(const Integer& a, std::int64_t m);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

std::int64_t to_int64(const Integer& value);

RatVector to_rational(std::span<const Integer> v);

}  // namespace qps

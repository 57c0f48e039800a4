#pragma once

#include "qps/box_spline.hpp"
#include "qps/rational.hpp"

#include <doctest.h>

#include <functional>
#include <random>

namespace qps::test {

inline IntVector iv(std::initializer_list<long> v) {
  IntVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

inline IntMatrix im(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix out;
  for (const auto& r : rows) out.push_back(iv(r));
  return out;
}

inline Rational q(long p, long d = 1) { return make_rational(p, d); }

/// Calls fn on every integer point of [lo, hi]^dim.
inline void for_box(std::size_t dim, long lo, long hi, const std::function<void(const IntVector&)>& fn) {
  IntVector x(dim, Integer(lo));
  for (;;) {
    fn(x);
    std::size_t i = 0;
    for (; i < dim; ++i) {
      if (++x[i] <= hi) break;
      x[i] = lo;
    }
    if (i == dim) return;
  }
}

/// Number of box points where f and g differ (reported through doctest).
inline int count_differences(std::size_t dim, long lo, long hi, const std::function<Rational(const IntVector&)>& f,
                             const std::function<Rational(const IntVector&)>& g) {
  int bad = 0;
  for_box(dim, lo, hi, [&](const IntVector& x) {
    if (f(x) != g(x)) ++bad;
  });
  return bad;
}

}  // namespace qps::test

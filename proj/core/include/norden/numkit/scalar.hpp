#pragma once

// Uniform scalar vocabulary over double, Dual<...> and Rational.
//
// Geometry code is written once against these helpers and instantiated in
// exact mode (Rational, Lie-algebra scenes) or float mode (double and nested
// duals, chart scenes).

#include <cmath>
#include <string>
#include <type_traits>

#include "norden/numkit/dual.hpp"
#include "norden/numkit/rational.hpp"

namespace norden {

enum class ScalarMode { Exact, Float };

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& q) { return q.get_d(); }
template <class T>
double to_double(const Dual<T>& x) {
  return to_double(x.v);
}

inline double magnitude(double x) { return std::fabs(x); }
inline Rational magnitude(const Rational& q) { return abs(q); }
template <class T>
Dual<T> magnitude(const Dual<T>& x) {
  return abs(x);
}

template <class T>
int sign_of(const T& x) {
  if constexpr (is_exact_v<T>) {
    return sgn(x);
  } else {
    double r = to_double(x);
    return (r > 0.0) - (r < 0.0);
  }
}

// Exact zero in rational mode, |x| <= tol on the real part otherwise.
template <class T>
bool is_negligible(const T& x, double tol) {
  if constexpr (is_exact_v<T>) {
    return sgn(x) == 0;
  } else {
    return std::fabs(to_double(x)) <= tol;
  }
}

inline double square_root(double x) { return std::sqrt(x); }
inline Rational square_root(const Rational& q) { return exact_sqrt(q); }
template <class T>
Dual<T> square_root(const Dual<T>& x) {
  T s = square_root(x.v);
  return {s, x.d / (T(2) * s)};
}

template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, double>) {
    return to_double(x);
  } else if constexpr (is_exact_v<To>) {
    static_assert(std::is_same_v<From, double>, "only double converts to Rational");
    return Rational(x);
  } else if constexpr (is_dual_v<To>) {
    return To(scalar_cast<decltype(To{}.v)>(x));
  } else {
    return To(x);
  }
}

// Value part of a one-level dual.
template <class T>
T strip(const Dual<T>& x) {
  return x.v;
}

std::string format_scalar(double x);
std::string format_scalar(const Rational& q);

}  // namespace norden

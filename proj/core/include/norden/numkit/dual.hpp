#pragma once

// Forward-mode dual numbers with a single tangent slot.
//
// A Dual<T> carries value + ε·tangent with ε² = 0, so arithmetic propagates
// first derivatives exactly.  Several differentiation directions are handled
// by nesting: Dual<Dual<double>> carries mixed second derivatives.
//
// Comparisons look only at the real part so that branch selection (pivoting,
// sign fixing) made on a dual input matches the branch taken at the base point.

#include <cmath>
#include <concepts>
#include <type_traits>

namespace norden {

template <class T>
struct Dual;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

template <class T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  constexpr Dual(const T& value, const T& tangent) : v(value), d(tangent) {}

  template <class U>
    requires(!std::same_as<std::remove_cvref_t<U>, Dual<T>> && std::constructible_from<T, const U&>)
  constexpr Dual(const U& value) : v(value), d(0) {}  // NOLINT: implicit lift of constants

  constexpr Dual(const Dual&) = default;
  constexpr Dual& operator=(const Dual&) = default;

  friend constexpr Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
  }

  constexpr Dual& operator+=(const Dual& o) { return *this = *this + o; }
  constexpr Dual& operator-=(const Dual& o) { return *this = *this - o; }
  constexpr Dual& operator*=(const Dual& o) { return *this = *this * o; }
  constexpr Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend constexpr bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
  friend constexpr bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
  friend constexpr bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }
  friend constexpr bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }
  // Equality compares values only, like the ordering operators.
  friend constexpr bool operator==(const Dual& a, const Dual& b) { return a.v == b.v; }
};

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T s = sqrt(x.v);
  return {s, x.d / (T(2) * s)};
}

template <class T>
Dual<T> abs(const Dual<T>& x) {
  return x.v < T(0) ? -x : x;
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.v);
  return {e, e * x.d};
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.v), x.d / x.v};
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {sin(x.v), cos(x.v) * x.d};
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {cos(x.v), -sin(x.v) * x.d};
}

template <class T>
Dual<T> sinh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {sinh(x.v), cosh(x.v) * x.d};
}

template <class T>
Dual<T> cosh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {cosh(x.v), sinh(x.v) * x.d};
}

// Seeds a variable: value x with unit tangent along the active direction.
template <class T>
constexpr Dual<T> make_variable(const T& x, const T& tangent = T(1)) {
  return {x, tangent};
}

template <class T>
constexpr const T& value_of(const Dual<T>& x) {
  return x.v;
}

template <class T>
constexpr const T& tangent_of(const Dual<T>& x) {
  return x.d;
}

}  // namespace norden

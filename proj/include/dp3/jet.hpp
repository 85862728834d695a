#pragma once

// Truncated Taylor series in the offset h = tau - tau_0, used to differentiate
// the transformed functions u+, u-, f exactly (to rounding) instead of by
// finite differences.

#include <array>
#include <concepts>
#include <cstddef>

namespace dp3 {

template <typename T, std::size_t N>
class Jet {
  static_assert(N >= 1);

 public:
  constexpr Jet() = default;
  constexpr Jet(T constant) { c_[0] = constant; }  // NOLINT: implicit lift

  static constexpr Jet variable(T at) {
    Jet j(at);
    if constexpr (N > 1) j.c_[1] = T(1);
    return j;
  }

  static constexpr std::size_t order = N - 1;

  constexpr T& operator[](std::size_t k) { return c_[k]; }
  constexpr const T& operator[](std::size_t k) const { return c_[k]; }

  constexpr T value() const { return c_[0]; }

  /// k-th derivative at h = 0.
  constexpr T derivative_value(std::size_t k) const {
    T factorial(1);
    for (std::size_t i = 2; i <= k; ++i) factorial *= T(static_cast<double>(i));
    return c_[k] * factorial;
  }

  /// d/dh; the top coefficient is lost.
  constexpr Jet derivative() const {
    Jet d;
    for (std::size_t k = 0; k + 1 < N; ++k) {
      d.c_[k] = c_[k + 1] * T(static_cast<double>(k + 1));
    }
    return d;
  }

  constexpr Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < N; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < N; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr Jet& operator*=(const Jet& o) { return *this = *this * o; }
  constexpr Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend constexpr Jet operator-(Jet a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend constexpr Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend constexpr Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend constexpr Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; i + j < N; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  friend constexpr Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (std::size_t k = 0; k < N; ++k) {
      T acc = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b.c_[j] * q.c_[k - j];
      q.c_[k] = acc / b.c_[0];
    }
    return q;
  }

  template <typename S>
    requires std::convertible_to<S, T>
  friend constexpr Jet operator*(Jet a, S s) {
    for (auto& x : a.c_) x *= T(s);
    return a;
  }
  template <typename S>
    requires std::convertible_to<S, T>
  friend constexpr Jet operator*(S s, Jet a) {
    return a * s;
  }
  template <typename S>
    requires std::convertible_to<S, T>
  friend constexpr Jet operator+(Jet a, S s) {
    a.c_[0] += T(s);
    return a;
  }
  template <typename S>
    requires std::convertible_to<S, T>
  friend constexpr Jet operator+(S s, Jet a) {
    return a + s;
  }
  template <typename S>
    requires std::convertible_to<S, T>
  friend constexpr Jet operator-(Jet a, S s) {
    a.c_[0] -= T(s);
    return a;
  }
  template <typename S>
    requires std::convertible_to<S, T>
  friend constexpr Jet operator-(S s, const Jet& a) {
    return Jet(T(s)) - a;
  }
  template <typename S>
    requires std::convertible_to<S, T>
  friend constexpr Jet operator/(Jet a, S s) {
    for (auto& x : a.c_) x /= T(s);
    return a;
  }
  template <typename S>
    requires std::convertible_to<S, T>
  friend constexpr Jet operator/(S s, const Jet& a) {
    return Jet(T(s)) / a;
  }

 private:
  std::array<T, N> c_{};
};

}  // namespace dp3

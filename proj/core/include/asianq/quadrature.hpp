#pragma once

// Globally adaptive Gauss-Kronrod (10/21 point) quadrature for real and
// complex valued integrands. Intervals are bisected in order of their error
// estimate until the requested tolerance is met.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include "asianq/error.hpp"

namespace asianq::quad {

struct Options {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  std::size_t max_intervals = 4000;
  /// When false a non-converged result is returned with converged == false
  /// instead of raising ErrorKind::nonconvergence.
  bool throw_on_failure = true;
};

template <class T>
struct Result {
  T value{};
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// QUADPACK qk21 abscissae (Kronrod) and weights; every second abscissa is a
// Gauss-Legendre node.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452184, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T>
struct Interval {
  double a;
  double b;
  T value;
  double error;
  // Rounding floor 50 eps * integral of |f|, as in QUADPACK.
  double floor;
  bool operator<(const Interval& other) const { return error < other.error; }
};

template <class T, class F>
Interval<T> kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[10];
  T gauss{};
  double resabs = magnitude(fc) * kWgk[10];
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * kWgk[j];
    resabs += (magnitude(f1) + magnitude(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  const double floor = 50.0 * 2.220446049250313e-16 * resabs * std::abs(half);
  return {a, b, kronrod, std::max(magnitude(kronrod - gauss), floor), floor};
}

}  // namespace detail

/// Integrates f over the finite interval [a, b].
template <class F>
auto integrate(F&& f, double a, double b, const Options& opts = {})
    -> Result<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Interval<T>> heap;
  auto first = detail::kronrod21<T>(f, a, b);
  out.evaluations = 21;
  T total = first.value;
  double total_error = first.error;
  double total_floor = first.floor;
  heap.push(first);

  std::size_t intervals = 1;
  while (true) {
    const double tol = std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(total));
    // Past the summed rounding floors nothing more can be resolved.
    if (total_error <= tol || total_error <= 2.0 * total_floor) {
      out.converged = true;
      break;
    }
    if (intervals >= opts.max_intervals) break;
    auto worst = heap.top();
    // The largest remaining error is already at the rounding floor; further
    // bisection cannot improve the result.
    if (worst.error <= worst.floor) {
      out.converged = true;
      break;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    auto left = detail::kronrod21<T>(f, worst.a, mid);
    auto right = detail::kronrod21<T>(f, mid, worst.b);
    out.evaluations += 42;
    ++intervals;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_floor += left.floor + right.floor - worst.floor;
    heap.push(left);
    heap.push(right);
  }

  // Re-add from the pieces to avoid drift from the running updates.
  T sum{};
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.abs_error = err;
  if (!detail::finite(sum)) out.converged = false;
  if (!out.converged && opts.throw_on_failure) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "adaptive quadrature did not converge on [%.6g, %.6g], error estimate %.3e", a, b,
                  err);
    throw Error(ErrorKind::nonconvergence, msg);
  }
  return out;
}

/// Integrates f over [a, +inf) through the map x = a + t / (1 - t).
template <class F>
auto integrate_to_infinity(F&& f, double a, const Options& opts = {})
    -> Result<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  auto mapped = [&](double t) -> T {
    const double s = 1.0 - t;
    const double x = a + t / s;
    const T v = f(x);
    const double jac = 1.0 / (s * s);
    return v * jac;
  };
  // The endpoint t = 1 is never sampled by the open Kronrod rule.
  return integrate(mapped, 0.0, 1.0, opts);
}

}  // namespace asianq::quad

#pragma once

#include <array>
#include <string_view>

namespace rsched {

/// Comparison slack used for every time/weight/ratio decision in the library.
/// `lt(a, b)` reads as "a is definitely smaller than b", i.e. a < b - eps.
struct Tolerance {
  double eps_time = 1e-9;
  double eps_weight = 1e-9;
  double eps_ratio = 1e-9;

  constexpr bool time_lt(double a, double b) const { return a < b - eps_time; }
  constexpr bool time_le(double a, double b) const { return a <= b + eps_time; }
  constexpr bool time_eq(double a, double b) const {
    return !time_lt(a, b) && !time_lt(b, a);
  }
  constexpr bool weight_gt(double a, double b) const {
    return a > b + eps_weight;
  }
  constexpr bool ratio_gt(double a, double b) const { return a > b + eps_ratio; }
};

inline constexpr Tolerance kTolerance{};

/// Coefficients of a3*x^3 + a2*x^2 + a1*x + a0, highest degree first.
using Cubic = std::array<double, 4>;

/// Plain Horner evaluation.
double eval_cubic(const Cubic& c, double x);

/// Compensated Horner evaluation (error-free transforms via fma). The result is
/// as accurate as if evaluated in twice the working precision, so it resolves
/// the true residual of a double-precision root instead of rounding it to zero.
double eval_cubic_accurate(const Cubic& c, double x);

/// Root of the cubic inside [lo, hi]. Bisection keeps a sign-changing bracket;
/// a Newton step from the current best point is taken whenever it lands
/// strictly inside the bracket. Stops once |cubic(x)| <= tol or the bracket has
/// shrunk to adjacent doubles.
///
/// Throws BadBracket if lo >= hi (or tol <= 0), NoSignChange if
/// cubic(lo) * cubic(hi) > 0.
double find_cubic_root(double a3, double a2, double a1, double a0, double lo,
                       double hi, double tol);

enum class RatioKind { R, R1, R2 };

std::string_view to_string(RatioKind kind);

struct RatioConstant {
  RatioKind kind;
  double value;
  /// Defining cubic evaluated (accurately) at `value`.
  double residual;
};

/// Defining cubic of each constant:
///   R  : 3x^3 - 2x^2 - x - 2   (LLW competitive ratio)
///   R1 : x^3 - x^2 - 1         (general lower bound)
///   R2 : 4x^3 - x^2 - 6        (unit-size lower bound)
Cubic defining_cubic(RatioKind kind);

/// Cached, computed once on first use; thread-safe.
const RatioConstant& ratio_constant(RatioKind kind);

/// Start time from which LLW no longer opens interruption phases: (2-R)/(R-1).
double llw_threshold(double ratio);

} // namespace rsched

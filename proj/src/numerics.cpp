#include "rsched/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rsched/errors.hpp"

namespace rsched {
namespace {

struct Split {
  double hi;
  double lo;
};

Split two_sum(double a, double b) {
  const double s = a + b;
  const double z = s - a;
  return {s, (a - (s - z)) + (b - z)};
}

Split two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

double eval_derivative(const Cubic& c, double x) {
  return (3.0 * c[0] * x + 2.0 * c[1]) * x + c[2];
}

} // namespace

double eval_cubic(const Cubic& c, double x) {
  return ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
}

double eval_cubic_accurate(const Cubic& c, double x) {
  double s = c[0];
  double err = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const auto [p, pe] = two_prod(s, x);
    const auto [t, se] = two_sum(p, c[i]);
    s = t;
    err = err * x + (pe + se);
  }
  return s + err;
}

double find_cubic_root(double a3, double a2, double a1, double a0, double lo,
                       double hi, double tol) {
  if (!(lo < hi))
    throw BadBracket("find_cubic_root: need lo < hi, got [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
  if (!(tol > 0.0))
    throw BadBracket("find_cubic_root: tolerance must be positive");

  const Cubic c{a3, a2, a1, a0};
  double f_lo = eval_cubic(c, lo);
  const double f_hi = eval_cubic(c, hi);
  if (std::abs(f_lo) <= tol)
    return lo;
  if (std::abs(f_hi) <= tol)
    return hi;
  if (f_lo * f_hi > 0.0)
    throw NoSignChange("find_cubic_root: cubic has the same sign at both ends");

  double a = lo;
  double b = hi;
  double x = a + 0.5 * (b - a);
  double best = x;
  double best_f = std::numeric_limits<double>::infinity();
  bool force_bisect = false;

  for (int iter = 0; iter < 400; ++iter) {
    const double fx = eval_cubic(c, x);
    if (std::abs(fx) < best_f) {
      best = x;
      best_f = std::abs(fx);
    }
    if (best_f <= tol)
      return best;

    const double width = b - a;
    if ((fx < 0.0) == (f_lo < 0.0)) {
      a = x;
      f_lo = fx;
    } else {
      b = x;
    }
    if (!(a < b) || std::nextafter(a, b) >= b)
      break;

    double next = a + 0.5 * (b - a);
    if (!force_bisect) {
      const double d = eval_derivative(c, x);
      if (d != 0.0) {
        const double newton = x - fx / d;
        if (newton > a && newton < b)
          next = newton;
      }
    }
    // Newton that fails to halve the bracket hands the next step to bisection.
    force_bisect = !force_bisect && (b - a) > 0.5 * width;
    x = next;
  }
  return best;
}

std::string_view to_string(RatioKind kind) {
  switch (kind) {
  case RatioKind::R:
    return "R";
  case RatioKind::R1:
    return "R1";
  case RatioKind::R2:
    return "R2";
  }
  return "?";
}

Cubic defining_cubic(RatioKind kind) {
  switch (kind) {
  case RatioKind::R:
    return {3.0, -2.0, -1.0, -2.0};
  case RatioKind::R1:
    return {1.0, -1.0, 0.0, -1.0};
  case RatioKind::R2:
    return {4.0, -1.0, 0.0, -6.0};
  }
  return {};
}

const RatioConstant& ratio_constant(RatioKind kind) {
  static const std::array<RatioConstant, 3> table = [] {
    std::array<RatioConstant, 3> out{};
    for (RatioKind k : {RatioKind::R, RatioKind::R1, RatioKind::R2}) {
      const Cubic c = defining_cubic(k);
      // All three real roots lie in (1, 2).
      const double v = find_cubic_root(c[0], c[1], c[2], c[3], 1.0, 2.0, 1e-14);
      out[static_cast<std::size_t>(k)] = {k, v, eval_cubic_accurate(c, v)};
    }
    return out;
  }();
  return table[static_cast<std::size_t>(kind)];
}

double llw_threshold(double ratio) { return (2.0 - ratio) / (ratio - 1.0); }

} // namespace rsched

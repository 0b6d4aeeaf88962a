#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "spdecay/error.hpp"

namespace spdecay {

struct BracketedRoot {
  double root;
  double value;    // f(root)
  double partner;  // other end of the final sign-change bracket
  int iterations;
};

/// Brent's method: bisection safeguarded by secant and inverse quadratic
/// interpolation steps. Requires f(a) and f(b) of opposite sign (or zero).
/// Stops when the bracket is narrower than 4 eps |root| + xtol or an exact
/// zero is hit.
template <class F>
BracketedRoot brent_root(F&& f, double a, double b, double fa, double fb, double xtol,
                         int max_iter = 300) {
  if ((fa > 0.0 && fb > 0.0) || (fa < 0.0 && fb < 0.0)) {
    throw Error(ErrorCode::BracketFailure, "root is not bracketed");
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * eps * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return {b, fb, c, iter};

    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = d;
      }
    } else {
      d = m;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw Error(ErrorCode::NonConvergence, "root iteration limit reached");
}

}  // namespace spdecay

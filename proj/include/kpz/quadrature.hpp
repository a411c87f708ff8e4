#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace kpz::quadrature {

// Real quadrature rule: nodes with positive weights on a finite interval (or
// the concatenation of several panels).
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] int size() const { return static_cast<int>(nodes.size()); }

  [[nodiscard]] double integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

// n-point Gauss-Legendre rule on [a, b].  Nodes by Newton iteration on the
// Legendre recurrence; exact for polynomials of degree 2n-1.
Rule gauss_legendre(int n, double a, double b);

// Append GL panels of `rule2` to `rule1` (concatenation of domains).
Rule concat(Rule r1, const Rule& r2);

// Composite GL: `panels` equal panels of `per_panel` points on [a, b].
Rule composite_gl(int per_panel, int panels, double a, double b);

// Half-line surrogate: rule on [c, c + length] with geometrically growing
// panel widths (ratio `growth`), `per_panel` GL points each.  Used wherever
// the integrand decays at least exponentially on [c, infinity).
Rule half_line_rule(double c, double length, int panels, int per_panel,
                    double growth = 1.6);

// Principal value integral  PV int_lo^hi f(t) dt  where f has a simple pole
// at `pole` strictly inside (lo, hi).  The symmetric window (pole +/- delta)
// uses the identity (g(p+u) - g(p-u))/u = f(p+u) + f(p-u) for g = (t-p) f(t),
// which removes the singularity exactly; the remainder is integrated with
// panels graded toward the pole.  Throws std::invalid_argument if the pole is
// not strictly inside the window.
double pv_integral(const std::function<double(double)>& f, double pole,
                   double lo, double hi, int per_panel = 24);

// Oscillatory auxiliary integral
//   G_a(x) = (1/(2 pi^{3/2})) int_0^infty sin(x xi + xi^3/12 - a^2/xi + pi/4)
//                                         xi^{-1/2} dxi,
// evaluated by rotating the ray to xi = e^{i pi/6} u (the cubic term then
// decays like e^{-u^3/12} and the a^2/xi term decays as well), followed by
// u = v^2 to absorb the endpoint singularity.  Accurate to ~1e-8 absolute
// for |x| <= 12 and |a| <= 12; the oscillatory real-axis definition is kept
// as a test oracle.
double oscillatory_g(double a, double x);

} // namespace kpz::quadrature

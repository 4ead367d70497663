#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

namespace corrpref::num {

using Real = double;
using Fn = std::function<Real(Real)>;

// Bisection on [lo,hi]; f(lo) and f(hi) must straddle zero.
// Throws NoRoot if the bracket does not straddle.
Real bisect(const Fn& f, Real lo, Real hi, Real tol = 1e-12, int max_iter = 400);

// Newton with bisection safeguard inside a bracket; falls back to pure
// bisection steps whenever the Newton step leaves the bracket.
Real newton_bracketed(const Fn& f, const Fn& df, Real lo, Real hi,
                      Real rel_tol = 1e-12, int max_iter = 200);

// Adaptive Gauss(7)/Kronrod(15) quadrature with absolute tolerance; interval
// bisection depth capped (throws SingularIntegrand past the cap).
Real integrate(const Fn& f, Real a, Real b, Real abs_tol = 1e-10,
               int max_depth = 60);

// Central finite difference of given order (1 or 2), used only for
// cross-checking analytic derivatives in tests.
Real central_diff(const Fn& f, Real x, int order, Real h = 1e-5);

// Phase-1 simplex feasibility for {x >= 0 : A x = b}. Returns a feasible
// point if the artificial objective reaches <= tol, std::nullopt otherwise.
std::optional<Eigen::VectorXd> simplex_feasible(const Eigen::MatrixXd& A,
                                                const Eigen::VectorXd& b,
                                                double tol = 1e-9);

// Golden-section minimum of a unimodal function on [lo,hi].
Real golden_section_min(const Fn& f, Real lo, Real hi, Real tol = 1e-6);

}  // namespace corrpref::num

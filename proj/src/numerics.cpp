#include "corrpref/numerics.hpp"

#include <cmath>
#include <vector>

#include "corrpref/errors.hpp"

namespace corrpref::num {

Real bisect(const Fn& f, Real lo, Real hi, Real tol, int max_iter) {
  Real flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    throw NoRoot("bracket endpoints do not straddle zero");
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    Real mid = 0.5 * (lo + hi);
    Real fm = f(mid);
    if (fm == 0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Real newton_bracketed(const Fn& f, const Fn& df, Real lo, Real hi, Real rel_tol,
                      int max_iter) {
  Real flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    throw NoRoot("newton bracket does not straddle zero");
  Real x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    Real fx = f(x);
    if (fx == 0) return x;
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    Real d = df(x);
    Real step = d != 0 ? fx / d : 0;
    Real xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // safeguard
    Real scale = std::max({std::fabs(x), std::fabs(xn), Real(1)});
    bool done = std::fabs(xn - x) <= rel_tol * scale;
    x = xn;
    if (done) return x;
  }
  return x;
}

namespace {

// 15-point Kronrod extension of 7-point Gauss.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct GkResult {
  Real value;
  Real error;
};

GkResult gk15(const Fn& f, Real a, Real b) {
  const Real c = 0.5 * (a + b), h = 0.5 * (b - a);
  Real gauss = 0, kron = 0;
  for (int i = 0; i < 8; ++i) {
    Real fv;
    if (i == 7) {
      fv = f(c);
    } else {
      fv = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
    }
    kron += kWgk[i] * fv;
    if (i % 2 == 1) gauss += kWg[i / 2] * fv;
  }
  return {kron * h, std::fabs((kron - gauss) * h)};
}

Real adapt(const Fn& f, Real a, Real b, Real tol, int depth, int max_depth) {
  GkResult r = gk15(f, a, b);
  if (r.error <= tol || r.error <= 1e-16 * std::fabs(r.value)) return r.value;
  if (depth >= max_depth)
    throw SingularIntegrand("quadrature did not converge within depth cap");
  Real mid = 0.5 * (a + b);
  // Split the budget by sqrt(2) rather than 2: with halving, the attainable
  // error of a noisy integrand (e.g. one computed by an inner quadrature)
  // shrinks no faster than the leaf tolerance and the recursion never
  // terminates; the sqrt(2) split keeps the summed leaf error below ~tol
  // while leaving headroom at every level.
  const Real child_tol = tol / 1.4142135623730951;
  return adapt(f, a, mid, child_tol, depth + 1, max_depth) +
         adapt(f, mid, b, child_tol, depth + 1, max_depth);
}

}  // namespace

Real integrate(const Fn& f, Real a, Real b, Real abs_tol, int max_depth) {
  if (a == b) return 0;
  return adapt(f, a, b, abs_tol, 0, max_depth);
}

Real central_diff(const Fn& f, Real x, int order, Real h) {
  switch (order) {
    case 1:
      return (f(x + h) - f(x - h)) / (2 * h);
    case 2:
      return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    default:
      throw DomainViolation("central_diff supports orders 1 and 2");
  }
}

std::optional<Eigen::VectorXd> simplex_feasible(const Eigen::MatrixXd& A_in,
                                                const Eigen::VectorXd& b_in,
                                                double tol) {
  const int m = static_cast<int>(A_in.rows());
  const int n = static_cast<int>(A_in.cols());
  Eigen::MatrixXd A = A_in;
  Eigen::VectorXd b = b_in;
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0) {
      A.row(i) *= -1;
      b(i) *= -1;
    }
  }
  // tableau: [A | I | b], phase-1 cost c = sum of artificial rows
  Eigen::MatrixXd T(m + 1, n + m + 1);
  T.setZero();
  T.block(0, 0, m, n) = A;
  T.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
  T.block(0, n + m, m, 1) = b;
  // phase-1 cost is the sum of artificials: coefficient 1 on each artificial
  // column, then reduce by the constraint rows so the basic artificials carry
  // zero reduced cost
  for (int i = 0; i < m; ++i) T(m, n + i) = 1.0;
  for (int i = 0; i < m; ++i) T.row(m) -= T.row(i);

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const double eps = 1e-11;
  const int pivot_cap = 50000;
  for (int it = 0; it < pivot_cap; ++it) {
    int col = -1;  // Bland's rule: smallest index with negative reduced cost
    for (int j = 0; j < n + m; ++j) {
      if (T(m, j) < -eps) {
        col = j;
        break;
      }
    }
    if (col < 0) break;
    int row = -1;
    double best = 0;
    for (int i = 0; i < m; ++i) {
      if (T(i, col) > eps) {
        double ratio = T(i, n + m) / T(i, col);
        if (row < 0 || ratio < best - eps ||
            (ratio < best + eps && basis[i] < basis[row])) {
          row = i;
          best = ratio;
        }
      }
    }
    if (row < 0) break;  // unbounded below cannot happen in phase 1
    T.row(row) /= T(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i != row && std::fabs(T(i, col)) > 0) T.row(i) -= T(i, col) * T.row(row);
    }
    basis[row] = col;
  }

  double objective = -T(m, n + m);
  if (objective > tol) return std::nullopt;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) x(basis[i]) = T(i, n + m);
  }
  // guard against accumulated pivot error: the certificate must actually
  // satisfy the system
  if ((A_in * x - b_in).cwiseAbs().maxCoeff() > std::max(tol, 1e-8))
    return std::nullopt;
  return x;
}

Real golden_section_min(const Fn& f, Real lo, Real hi, Real tol) {
  const Real phi = (std::sqrt(5.0) - 1) / 2;
  Real a = lo, b = hi;
  Real x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  Real f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace corrpref::num

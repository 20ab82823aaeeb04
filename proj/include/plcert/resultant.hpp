#ifndef PLCERT_RESULTANT_HPP
#define PLCERT_RESULTANT_HPP

#include <stdexcept>
#include <vector>

#include "plcert/unipoly.hpp"

namespace plcert {

/// Polynomial in an eliminated variable whose coefficients (low to high)
/// are univariate polynomials in the remaining variable.
template <class F>
using BiPoly = std::vector<UniPoly<F>>;

template <class F>
int main_degree(const BiPoly<F>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!p[i].is_zero()) return i;
  return -1;
}

/// Sylvester resultant with respect to the main variable, evaluated by
/// fraction-free (Bareiss) elimination over K[u]: every division is exact.
/// Convention: Res(P, Q) = lc(P)^deg Q * prod Q(roots of P).
template <class F>
UniPoly<F> resultant(const F& f, const BiPoly<F>& p, const BiPoly<F>& q) {
  const int m = main_degree(p), n = main_degree(q);
  if (m < 0 || n < 0) throw std::invalid_argument("resultant: zero polynomial");
  if (m == 0 && n == 0)
    throw std::invalid_argument("resultant: both inputs constant in the eliminated variable");
  const int N = m + n;
  std::vector<std::vector<UniPoly<F>>> a(N, std::vector<UniPoly<F>>(N));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) a[i][i + k] = p[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) a[n + i][i + k] = q[n - k];
  bool negate = false;
  UniPoly<F> prev = upoly::constant(f, f.one());
  for (int k = 0; k < N - 1; ++k) {
    if (a[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < N; ++i)
        if (!a[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return {};
      std::swap(a[k], a[piv]);
      negate = !negate;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        auto t = upoly::sub(f, upoly::mul(f, a[k][k], a[i][j]), upoly::mul(f, a[i][k], a[k][j]));
        a[i][j] = upoly::exact_div(f, t, prev);
      }
      a[i][k] = {};
    }
    prev = a[k][k];
  }
  UniPoly<F> det = a[N - 1][N - 1];
  if (negate) det = upoly::scale(f, det, f.neg(f.one()));
  return det;
}

}  // namespace plcert

#endif  // PLCERT_RESULTANT_HPP

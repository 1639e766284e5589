#include "qvs/resultant.hpp"

#include <vector>

namespace qvs {

Rat resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("resultant: zero input");
  int m = p.degree(), n = q.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) return pow_rat(p.lead(), n);
  if (n == 0) return pow_rat(q.lead(), m);

  int N = m + n;
  std::vector<std::vector<Rat>> A(N, std::vector<Rat>(N, Rat(0)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) A[r][r + k] = p.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) A[n + r][r + k] = q.coeff(n - k);

  // Fraction-free-enough: plain rational Gaussian elimination.
  Rat det = 1;
  for (int col = 0; col < N; ++col) {
    int piv = -1;
    for (int r = col; r < N; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(A[piv], A[col]);
      det = -det;
    }
    det *= A[col][col];
    Rat inv = Rat(1) / A[col][col];
    for (int r = col + 1; r < N; ++r) {
      if (A[r][col] == 0) continue;
      Rat f = A[r][col] * inv;
      for (int c = col; c < N; ++c) A[r][c] -= f * A[col][c];
    }
  }
  return det;
}

}  // namespace qvs

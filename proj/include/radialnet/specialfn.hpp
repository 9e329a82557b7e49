#pragma once

#include <vector>

#include "radialnet/bigrational.hpp"

namespace radialnet {

// k!! = k (k-2) (k-4) ..., with 0!! = 1.
BigInt double_factorial(unsigned k);

// alpha_{2k}(d) = (d-2)!! / ((2k)!! (d+2k-2)!!), the coefficient of z^{2k} in F_d.
BigRational alpha_coeff(int d, int k);

struct FdCoefficients {
  int d = 0;
  std::vector<BigRational> coeffs;  // coeffs[k] = alpha_{2k}(d)
  int truncation_order = 0;

  static FdCoefficients compute(int d, int order);
};

// F_d(z) = sum_k alpha_{2k}(d) z^{2k} on [0,1]. Both stop once an analytic
// majorant of the remaining tail drops below tol.
double fd_eval_series(int d, double z, double tol);
// exp(-z) sum_k r_k (2z)^k / k!,  r_k = prod_{j<k} ((d-1)/2 + j) / (d-1+j)
double fd_eval_closed(int d, double z, double tol);
// Series path at GMP float precision `bits`, for residual checks where the
// caller multiplies by huge coefficients. The tolerance is passed as its
// natural log since it can be far below the double range.
mpf_class fd_eval_series_mp(int d, const mpf_class& z, double log_tol, unsigned bits);
// Highest k kept so that the tail majorant at z is below exp(log_tol).
int fd_series_order(double z, double log_tol);

// sum_{k=0}^n (-1)^k 2^k ((d-1)/2)_k / ((n-k)! k! (d-1)_k)
BigRational a_n_sum(int d, int n);
// (d-2)!! / (n!! (d+n-2)!!) for even n, 0 for odd n
BigRational a_n_closed(int d, int n);

}  // namespace radialnet

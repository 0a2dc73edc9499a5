#pragma once

#include "pkf/core/types.hpp"

namespace pkf {

/// Replaces m with (m + m^T) / 2.
void symmetrize(Matrix& m);

/// Infinity norm (max absolute row sum).
double inf_norm(const Matrix& m);

bool is_symmetric(const Matrix& m, double rel_tol = 1e-9);

/// All eigenvalues >= -rel_tol * ||m||. Symmetric part only is examined.
bool is_psd(const Matrix& m, double rel_tol = 1e-9);

bool all_finite(const GaussianBelief& b);

/// Solves A X = B for symmetric positive (semi)definite A.
///
/// Tries Cholesky first and falls back to a symmetric eigendecomposition.
/// Throws NumericalError (with the condition number in the message) when
/// A is numerically singular or indefinite.
Matrix spd_solve(const Matrix& A, const Matrix& B, const char* what = "matrix");

/// Cholesky-based log-determinant with the same fallback rules as spd_solve.
double spd_logdet(const Matrix& A, const char* what = "matrix");

/// Covariance health summary used by long-running pipelines.
struct CovarianceHealth {
  long checked = 0;
  long asymmetric = 0;
  long not_psd = 0;
  long non_finite = 0;

  void record(const GaussianBelief& b);
  bool ok() const { return asymmetric == 0 && not_psd == 0 && non_finite == 0; }
  CovarianceHealth& operator+=(const CovarianceHealth& o);
};

}  // namespace pkf

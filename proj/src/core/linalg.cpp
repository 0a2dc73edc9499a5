#include "pkf/core/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pkf/core/errors.hpp"

namespace pkf {

void symmetrize(Matrix& m) {
  m = (0.5 * (m + m.transpose())).eval();
}

double inf_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

bool is_symmetric(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double asym = inf_norm(m - m.transpose());
  return asym <= rel_tol * (1.0 + inf_norm(m));
}

bool is_psd(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return false;
  const double scale = std::max(1.0, inf_norm(sym));
  return es.eigenvalues().minCoeff() >= -rel_tol * scale;
}

bool all_finite(const GaussianBelief& b) {
  return b.mean.allFinite() && b.cov.allFinite();
}

namespace {

[[noreturn]] void throw_singular(const char* what, double min_ev, double max_ev) {
  std::ostringstream os;
  os << what << " is singular or indefinite (eigenvalues in [" << min_ev << ", " << max_ev
     << "], condition number ";
  if (min_ev > 0) {
    os << max_ev / min_ev;
  } else {
    os << "inf";
  }
  os << ")";
  throw NumericalError(os.str());
}

// Eigen fallback shared by solve and logdet. Returns the decomposition after
// checking that the spectrum is usable.
Eigen::SelfAdjointEigenSolver<Matrix> checked_eigen(const Matrix& A, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (A + A.transpose()));
  if (es.info() != Eigen::Success) {
    throw NumericalError(std::string(what) + ": eigendecomposition failed");
  }
  const double min_ev = es.eigenvalues().minCoeff();
  const double max_ev = es.eigenvalues().maxCoeff();
  const double eps = std::numeric_limits<double>::epsilon();
  if (!(max_ev > 0) || min_ev <= eps * max_ev * static_cast<double>(A.rows())) {
    throw_singular(what, min_ev, max_ev);
  }
  return es;
}

}  // namespace

Matrix spd_solve(const Matrix& A, const Matrix& B, const char* what) {
  if (!A.allFinite()) throw NumericalError(std::string(what) + " has non-finite entries");
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() == Eigen::Success) return llt.solve(B);
  auto es = checked_eigen(A, what);
  const Matrix& Q = es.eigenvectors();
  return Q * (Q.transpose() * B).cwiseQuotient(es.eigenvalues().replicate(1, B.cols()));
}

double spd_logdet(const Matrix& A, const char* what) {
  if (!A.allFinite()) throw NumericalError(std::string(what) + " has non-finite entries");
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() == Eigen::Success) {
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  }
  auto es = checked_eigen(A, what);
  return es.eigenvalues().array().log().sum();
}

void CovarianceHealth::record(const GaussianBelief& b) {
  ++checked;
  if (!all_finite(b)) {
    ++non_finite;
    return;
  }
  if (!is_symmetric(b.cov)) ++asymmetric;
  if (!is_psd(b.cov)) ++not_psd;
}

CovarianceHealth& CovarianceHealth::operator+=(const CovarianceHealth& o) {
  checked += o.checked;
  asymmetric += o.asymmetric;
  not_psd += o.not_psd;
  non_finite += o.non_finite;
  return *this;
}

}  // namespace pkf

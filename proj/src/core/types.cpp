#include "pkf/core/types.hpp"

#include <sstream>

#include "pkf/core/errors.hpp"

namespace pkf {

void LinearModel::validate() const {
  const auto n = F.rows();
  const auto m = H.rows();
  std::ostringstream err;
  if (F.cols() != n) err << "F must be square; ";
  if (G.rows() != n) err << "G rows must equal state dim; ";
  if (W.rows() != n || W.cols() != n) err << "W must be n x n; ";
  if (H.cols() != n) err << "H cols must equal state dim; ";
  if (V.rows() != m || V.cols() != m) err << "V must be m x m; ";
  if (!err.str().empty()) throw ContractViolation("LinearModel: " + err.str());
}

}  // namespace pkf

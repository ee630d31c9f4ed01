#pragma once

#include "curvlie/errors.hpp"

namespace curvlie {

/// Numerical tolerances shared by every operation.
struct ToleranceConfig {
  double tol_struct = 1e-9;  ///< structural identities, rank decisions
  double tol_eig = 1e-7;     ///< eigenvalue sign guard band
  double tol_curv = 1e-9;    ///< curvature identities and table matching

  void validate() const {
    if (!(tol_struct > 0) || !(tol_eig > 0) || !(tol_curv > 0))
      throw InputError("tolerances must be strictly positive");
  }
};

}  // namespace curvlie

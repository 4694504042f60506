#pragma once

#include <vector>

#include "nonunitary/eigensys.hpp"

namespace nonunitary {

struct FidelityCurve {
  std::vector<double> lambdas; ///< strictly increasing grid inside [0, 1]
  double eps = 0.0;            ///< perturbation step
  std::vector<double> chi;     ///< (1 - Re F) / eps^2
  std::vector<Complex> fidelity_raw;
};

/// Biorthogonal many-body overlap <GS_L(a)|GS_R(b)>: determinant of the
/// occupied-orbital matrix M_mn = <left m of a | right n of b>.
Complex gs_overlap(const BiorthSystem& sys_a, const ManyBodyState& state_a,
                   const BiorthSystem& sys_b, const ManyBodyState& state_b);

/// F(l) = <GS_L(l)|GS_R(l+eps)> <GS_L(l+eps)|GS_R(l)> along the impurity
/// path (the grid value replaces lambda on every impurity of the template).
/// Every lambda and lambda+eps must stay in [0, 1] and yield a PT-preserved
/// spectrum; failures are reported with the offending lambda.
FidelityCurve fidelity_susceptibility(const ChainSpec& spec_template,
                                      const std::vector<double>& lambdas, double eps,
                                      int threads = 1, double realness_tol = -1.0);

/// Uniform grid of `steps` points from 0 to (1 - eps), the endpoint chosen
/// so lambda + eps never leaves [0, 1].
std::vector<double> lambda_grid(int steps, double eps);

} // namespace nonunitary

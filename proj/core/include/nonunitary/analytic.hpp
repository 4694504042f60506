#pragma once

#include "nonunitary/model.hpp"

namespace nonunitary {

struct EpReport {
  double residual_norm = 0.0; ///< ||H phi|| for the candidate state
  bool exists = false;        ///< residual below tolerance
  Vector candidate_state;
};

/// Normalized uniform zero mode: (1, -i)/sqrt(2 n_cells) on every cell.
Vector ep_candidate(int n_cells);

/// Residual test of the candidate against the spec's Hamiltonian.
/// tol < 0 selects 1e-10 * max |H_ij|.
EpReport check_ep(const ChainSpec& spec, double tol = -1.0);

} // namespace nonunitary

#include "nonunitary/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace nonunitary {

Vector ep_candidate(int n_cells) {
  if (n_cells < 2) throw std::invalid_argument("ep_candidate: n_cells must be >= 2");
  Vector phi(2 * n_cells);
  const double norm = std::sqrt(2.0 * n_cells);
  for (int j = 0; j < n_cells; ++j) {
    phi[site_a(j)] = Complex(1.0, 0.0) / norm;
    phi[site_b(j)] = Complex(0.0, -1.0) / norm;
  }
  return phi;
}

EpReport check_ep(const ChainSpec& spec, double tol) {
  const auto h = build_hamiltonian(spec);
  if (tol < 0.0) tol = 1e-10 * h.entries.cwiseAbs().maxCoeff();
  EpReport report;
  report.candidate_state = ep_candidate(spec.n_cells);
  report.residual_norm = (h.entries * report.candidate_state).norm();
  report.exists = report.residual_norm < tol;
  return report;
}

} // namespace nonunitary

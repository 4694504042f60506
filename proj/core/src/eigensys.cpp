#include "nonunitary/eigensys.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nonunitary/util.hpp"

namespace nonunitary {

double default_realness_tol(const Hamiltonian& h) {
  return 1e-8 * h.entries.cwiseAbs().maxCoeff();
}

BiorthSystem diagonalize(const Hamiltonian& h, double realness_tol) {
  if (!h.entries.allFinite()) throw std::invalid_argument("Hamiltonian has non-finite entries");
  if (realness_tol < 0.0) realness_tol = default_realness_tol(h);

  Eigen::ComplexEigenSolver<Matrix> solver(h.entries, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed to converge");

  const int dim = static_cast<int>(h.entries.rows());
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  const auto& raw = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (raw[a].real() != raw[b].real()) return raw[a].real() < raw[b].real();
    if (raw[a].imag() != raw[b].imag()) return raw[a].imag() < raw[b].imag();
    return a < b;
  });

  BiorthSystem sys;
  sys.realness_tol = realness_tol;
  sys.energies.resize(dim);
  sys.right_vecs.resize(dim, dim);
  for (int n = 0; n < dim; ++n) {
    sys.energies[n] = raw[order[n]];
    sys.right_vecs.col(n) = solver.eigenvectors().col(order[n]);
  }

  Eigen::JacobiSVD<Matrix> svd(sys.right_vecs);
  const double smin = svd.singularValues()(dim - 1);
  const double smax = svd.singularValues()(0);
  sys.overlap_cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(smin > smax * 1e-15)) {
    std::ostringstream msg;
    msg << "EP-degenerate eigenbasis: right eigenvector matrix numerically singular"
        << " (overlap_cond = " << sys.overlap_cond << ")";
    throw std::runtime_error(msg.str());
  }

  // Inverse-adjoint left basis: left_vecs^dag * right_vecs = I exactly.
  sys.left_vecs = sys.right_vecs.inverse().adjoint();

  sys.phase_rigidity.resize(dim);
  for (int n = 0; n < dim; ++n) {
    const double ln = sys.left_vecs.col(n).norm();
    const double rn = sys.right_vecs.col(n).norm();
    sys.phase_rigidity[n] = 1.0 / (ln * rn); // <L_n|R_n> = 1 by construction
  }
  return sys;
}

PtPhase classify_pt(const BiorthSystem& sys, double realness_tol) {
  if (realness_tol < 0.0) realness_tol = sys.realness_tol;
  const double max_im = sys.energies.imag().cwiseAbs().maxCoeff();
  return max_im < realness_tol ? PtPhase::Preserved : PtPhase::Broken;
}

bool conjugate_pairs_ok(const BiorthSystem& sys, double tol) {
  // Greedy multiset matching: every energy must have an unused conjugate
  // partner within tol. A strict lexicographic sort would mis-pair levels
  // whose real parts coincide only up to numerical noise.
  const Eigen::Index n = sys.energies.size();
  std::vector<bool> used(n, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex target = std::conj(sys.energies[i]);
    Eigen::Index best = -1;
    double best_dist = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(sys.energies[j] - target);
      if (d <= best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best < 0) return false;
    used[best] = true;
  }
  return true;
}

ManyBodyState ground_state(const BiorthSystem& sys, bool allow_broken) {
  if (!allow_broken && classify_pt(sys) == PtPhase::Broken)
    throw std::runtime_error("ground_state: PT-broken spectrum, orbital ordering undefined");
  const int n_fill = static_cast<int>(sys.energies.size()) / 2;
  ManyBodyState state;
  state.occupied.resize(n_fill);
  std::iota(state.occupied.begin(), state.occupied.end(), 0);
  state.total_energy = Complex(0.0, 0.0);
  for (int n : state.occupied) state.total_energy += sys.energies[n];
  return state;
}

std::vector<EnergyPoint> energy_vs_size(const ChainSpec& spec_template,
                                        const std::vector<int>& sizes,
                                        int threads, double realness_tol, bool allow_broken) {
  std::vector<EnergyPoint> points(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t i) {
    const int cells = sizes[i];
    try {
      const auto h = build_hamiltonian(spec_template.with_cells(cells));
      const auto sys = diagonalize(h, realness_tol);
      const auto gs = ground_state(sys, allow_broken);
      points[i] = {cells, gs.total_energy.real(), sys.overlap_cond,
                   sys.phase_rigidity.minCoeff()};
    } catch (const std::exception& e) {
      throw std::runtime_error("L = " + std::to_string(cells) + ": " + e.what());
    }
  });
  return points;
}

} // namespace nonunitary

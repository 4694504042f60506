#include "nonunitary/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace nonunitary {

CorrelationMatrix correlation_matrix(const BiorthSystem& sys, const ManyBodyState& state) {
  const int dim = static_cast<int>(sys.energies.size());
  const int n_occ = static_cast<int>(state.occupied.size());
  Matrix r_occ(dim, n_occ), l_occ(dim, n_occ);
  for (int k = 0; k < n_occ; ++k) {
    const int n = state.occupied[k];
    if (n < 0 || n >= dim) throw std::invalid_argument("occupied orbital index out of range");
    r_occ.col(k) = sys.right_vecs.col(n);
    l_occ.col(k) = sys.left_vecs.col(n);
  }
  CorrelationMatrix c;
  c.entries = r_occ * l_occ.adjoint();
  c.overlap_cond = sys.overlap_cond;
  c.ep_warning = sys.overlap_cond > kEpCondThreshold;
  return c;
}

namespace {

// z ln z with the limit value 0 at z = 0.
Complex xlogx(Complex z) {
  if (std::abs(z) < 1e-14) return Complex(0.0, 0.0);
  return z * std::log(z);
}

} // namespace

EntropyValue subsystem_entropy(const CorrelationMatrix& c, int site_begin, int site_count,
                               double renyi_n) {
  const int dim = static_cast<int>(c.entries.rows());
  if (site_count <= 0 || site_begin < 0 || site_begin + site_count > dim)
    throw std::invalid_argument("invalid subsystem range");
  if (site_count == dim)
    throw std::invalid_argument("subsystem must be a proper subset of the chain");
  if (renyi_n <= 0.0) throw std::invalid_argument("renyi_n must be positive");

  const Matrix block = c.entries.block(site_begin, site_begin, site_count, site_count);
  Eigen::ComplexEigenSolver<Matrix> solver(block, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("correlation block eigendecomposition failed");

  Complex s(0.0, 0.0);
  const bool von_neumann = std::abs(renyi_n - 1.0) < 1e-12;
  for (int k = 0; k < site_count; ++k) {
    const Complex z = solver.eigenvalues()[k];
    const Complex w = Complex(1.0, 0.0) - z;
    if (von_neumann) {
      s -= xlogx(z) + xlogx(w);
    } else {
      s += std::log(std::pow(z, renyi_n) + std::pow(w, renyi_n)) / (1.0 - renyi_n);
    }
  }

  EntropyValue out;
  out.value = s.real();
  out.im_residue = std::abs(s.imag());
  out.flagged = out.im_residue > kImFlagTol;
  return out;
}

EntropyCurve entropy_profile(const ChainSpec& spec, double renyi_n, int cut_origin_site,
                             const std::vector<int>& cut_sizes, double realness_tol,
                             bool allow_broken) {
  const auto h = build_hamiltonian(spec);
  const auto sys = diagonalize(h, realness_tol);
  const auto state = ground_state(sys, allow_broken);
  const auto c = correlation_matrix(sys, state);

  EntropyCurve curve;
  curve.renyi_n = renyi_n;
  curve.total_cells = spec.n_cells;
  curve.boundary = spec.boundary;
  const int origin_cell = cut_origin_site / 2;
  for (const auto& imp : spec.impurities) {
    int rel = spec.internal_cell(imp.cell) - origin_cell;
    rel = ((rel % spec.n_cells) + spec.n_cells) % spec.n_cells;
    curve.impurity_cut_positions.push_back(rel);
  }

  for (int cells : cut_sizes) {
    const auto v = subsystem_entropy(c, cut_origin_site, 2 * cells, renyi_n);
    curve.samples.push_back({cells, v.value, v.im_residue, v.flagged});
    curve.max_im = std::max(curve.max_im, v.im_residue);
  }
  return curve;
}

} // namespace nonunitary

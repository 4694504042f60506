#include "nonunitary/fidelity.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nonunitary/util.hpp"

namespace nonunitary {

Complex gs_overlap(const BiorthSystem& sys_a, const ManyBodyState& state_a,
                   const BiorthSystem& sys_b, const ManyBodyState& state_b) {
  if (sys_a.energies.size() != sys_b.energies.size())
    throw std::invalid_argument("gs_overlap: mismatched Hilbert-space dimensions");
  if (state_a.occupied.size() != state_b.occupied.size())
    throw std::invalid_argument("gs_overlap: mismatched particle numbers");
  const int n_occ = static_cast<int>(state_a.occupied.size());

  Matrix m(n_occ, n_occ);
  for (int r = 0; r < n_occ; ++r) {
    const auto left = sys_a.left_vecs.col(state_a.occupied[r]);
    for (int s = 0; s < n_occ; ++s)
      m(r, s) = left.dot(sys_b.right_vecs.col(state_b.occupied[s]));
  }
  return m.determinant();
}

std::vector<double> lambda_grid(int steps, double eps) {
  if (steps < 2) throw std::invalid_argument("lambda_grid: need at least 2 steps");
  std::vector<double> grid(steps);
  const double last = 1.0 - eps;
  for (int i = 0; i < steps; ++i) grid[i] = last * i / (steps - 1);
  return grid;
}

FidelityCurve fidelity_susceptibility(const ChainSpec& spec_template,
                                      const std::vector<double>& lambdas, double eps,
                                      int threads, double realness_tol) {
  if (eps <= 0.0) throw std::invalid_argument("fidelity_susceptibility: eps must be > 0");
  if (!std::is_sorted(lambdas.begin(), lambdas.end(), std::less_equal<double>()))
    throw std::invalid_argument("fidelity_susceptibility: lambda grid must be strictly increasing");
  for (double l : lambdas)
    if (l < 0.0 || l + eps > 1.0 + 1e-12)
      throw std::invalid_argument("fidelity_susceptibility: lambda and lambda+eps must stay in [0, 1]");

  // Grid points and their shifted partners overlap when eps matches the grid
  // spacing; diagonalize each distinct lambda once.
  std::vector<double> values;
  values.reserve(2 * lambdas.size());
  for (double l : lambdas) {
    values.push_back(l);
    values.push_back(std::min(l + eps, 1.0));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-15; }),
               values.end());

  std::vector<BiorthSystem> systems(values.size());
  std::vector<ManyBodyState> states(values.size());
  parallel_for(values.size(), threads, [&](std::size_t i) {
    try {
      const auto h = build_hamiltonian(spec_template.with_lambda(values[i]));
      systems[i] = diagonalize(h, realness_tol);
      states[i] = ground_state(systems[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("lambda = " + std::to_string(values[i]) + ": " + e.what());
    }
  });

  auto lookup = [&](double l) -> std::size_t {
    auto it = std::lower_bound(values.begin(), values.end(), l - 1e-15);
    return static_cast<std::size_t>(it - values.begin());
  };

  FidelityCurve curve;
  curve.lambdas = lambdas;
  curve.eps = eps;
  curve.chi.resize(lambdas.size());
  curve.fidelity_raw.resize(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const std::size_t a = lookup(lambdas[i]);
    const std::size_t b = lookup(std::min(lambdas[i] + eps, 1.0));
    const Complex f = gs_overlap(systems[a], states[a], systems[b], states[b]) *
                      gs_overlap(systems[b], states[b], systems[a], states[a]);
    curve.fidelity_raw[i] = f;
    curve.chi[i] = (1.0 - f.real()) / (eps * eps);
  }
  return curve;
}

} // namespace nonunitary

#include "nonunitary/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace nonunitary {

namespace {

// Parity sign from the occupied sites of `mask` strictly below `site`.
int jw_sign(std::uint32_t mask, int site) {
  const std::uint32_t below = mask & ((1u << site) - 1u);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

std::vector<std::uint32_t> sector_configs(int n_sites, int n_particles) {
  std::vector<std::uint32_t> configs;
  for (std::uint32_t c = 0; c < (1u << n_sites); ++c)
    if (std::popcount(c) == n_particles) configs.push_back(c);
  return configs;
}

} // namespace

FockState fock_ground_state(const Hamiltonian& h, int n_particles) {
  const int n_sites = h.dim();
  if (n_sites > kFockMaxSites)
    throw std::invalid_argument("fock_ground_state: dimension guard exceeded (max 12 sites)");
  if (n_particles < 0 || n_particles > n_sites)
    throw std::invalid_argument("fock_ground_state: invalid particle number");

  FockState state;
  state.n_sites = n_sites;
  state.n_particles = n_particles;
  state.configs = sector_configs(n_sites, n_particles);
  const int dim = static_cast<int>(state.configs.size());

  if (n_particles == 0) {
    state.amplitudes = Vector::Ones(1);
    state.energy = 0.0;
    return state;
  }

  std::unordered_map<std::uint32_t, int> index;
  for (int k = 0; k < dim; ++k) index[state.configs[k]] = k;

  Matrix many(dim, dim);
  many.setZero();
  for (int k = 0; k < dim; ++k) {
    const std::uint32_t c = state.configs[k];
    for (int j = 0; j < n_sites; ++j) {
      if (!(c & (1u << j))) continue;
      for (int i = 0; i < n_sites; ++i) {
        const Complex t = h.entries(i, j);
        if (t == Complex(0.0, 0.0)) continue;
        if (i == j) {
          many(k, k) += t;
          continue;
        }
        if (c & (1u << i)) continue;
        const std::uint32_t removed = c & ~(1u << j);
        const int sign = jw_sign(c, j) * jw_sign(removed, i);
        many(index.at(removed | (1u << i)), k) += double(sign) * t;
      }
    }
  }

  Eigen::ComplexEigenSolver<Matrix> solver(many, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("fock_ground_state: eigendecomposition failed");
  int best = 0;
  for (int k = 1; k < dim; ++k)
    if (solver.eigenvalues()[k].real() < solver.eigenvalues()[best].real()) best = k;
  state.amplitudes = solver.eigenvectors().col(best);
  state.amplitudes.normalize();
  state.energy = solver.eigenvalues()[best].real();
  return state;
}

double fock_entropy(const FockState& state, int site_begin, int site_count) {
  if (state.n_sites > kFockMaxSites)
    throw std::invalid_argument("fock_entropy: dimension guard exceeded");
  if (site_count <= 0 || site_begin < 0 || site_begin + site_count > state.n_sites)
    throw std::invalid_argument("fock_entropy: invalid cut range");

  const std::uint32_t cut_mask = ((1u << site_count) - 1u) << site_begin;
  const std::uint32_t below_mask = (1u << site_begin) - 1u;
  const int cut_dim = 1 << site_count;

  // rho_A[K, K'] = sum_env psi'(K, env) conj(psi'(K', env)), where psi' carries
  // the fermionic reordering sign for moving cut-site operators to the front.
  Matrix rho = Matrix::Zero(cut_dim, cut_dim);
  std::unordered_map<std::uint32_t, std::vector<std::pair<int, Complex>>> by_env;
  for (std::size_t k = 0; k < state.configs.size(); ++k) {
    const std::uint32_t c = state.configs[k];
    const int kpart = std::popcount(c & cut_mask);
    const int below = std::popcount(c & below_mask);
    const int sign = (kpart * below) % 2 == 0 ? 1 : -1;
    const int kidx = static_cast<int>((c & cut_mask) >> site_begin);
    by_env[c & ~cut_mask].push_back({kidx, double(sign) * state.amplitudes[k]});
  }
  for (const auto& [env, entries] : by_env)
    for (const auto& [ka, va] : entries)
      for (const auto& [kb, vb] : entries) rho(ka, kb) += va * std::conj(vb);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
  double s = 0.0;
  for (int k = 0; k < cut_dim; ++k) {
    const double p = solver.eigenvalues()[k];
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

Complex fock_overlap(const FockState& a, const FockState& b) {
  if (a.n_sites != b.n_sites) throw std::invalid_argument("fock_overlap: basis mismatch");
  if (a.n_particles != b.n_particles) return Complex(0.0, 0.0);
  return a.amplitudes.dot(b.amplitudes);
}

Matrix fock_correlations(const FockState& state) {
  const int n = state.n_sites;
  std::unordered_map<std::uint32_t, int> index;
  for (std::size_t k = 0; k < state.configs.size(); ++k) index[state.configs[k]] = int(k);

  Matrix corr = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < state.configs.size(); ++k) {
    const std::uint32_t c = state.configs[k];
    for (int j = 0; j < n; ++j) {
      if (!(c & (1u << j))) continue;
      corr(j, j) += std::norm(state.amplitudes[k]);
      const std::uint32_t removed = c & ~(1u << j);
      for (int i = 0; i < n; ++i) {
        if (i == j || (c & (1u << i))) continue;
        const int sign = jw_sign(c, j) * jw_sign(removed, i);
        const int target = index.at(removed | (1u << i));
        corr(i, j) += double(sign) * std::conj(state.amplitudes[target]) * state.amplitudes[k];
      }
    }
  }
  return corr;
}

} // namespace nonunitary

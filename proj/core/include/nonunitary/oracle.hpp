#pragma once

#include <cstdint>
#include <vector>

#include "nonunitary/model.hpp"

namespace nonunitary {

/// Brute-force Fock-space state in the fixed particle-number sector.
/// Basis configurations are occupied-site bitmasks in lexicographic order.
/// Test oracle for tiny chains only (dimension guard: at most 12 sites).
struct FockState {
  int n_sites = 0;
  int n_particles = 0;
  std::vector<std::uint32_t> configs;
  Vector amplitudes;
  double energy = 0.0; ///< real part of the ground-state energy
};

inline constexpr int kFockMaxSites = 12;

/// Many-body Hamiltonian in the N-particle occupation basis; returns the
/// lowest-real-energy eigenstate.
FockState fock_ground_state(const Hamiltonian& h, int n_particles);

/// Exact reduced-density-matrix von Neumann entropy of the contiguous site
/// range [site_begin, site_begin + site_count), via partial trace.
/// Hermitian validation path only.
double fock_entropy(const FockState& state, int site_begin, int site_count);

/// Standard inner product <a|b>; throws on basis mismatch.
Complex fock_overlap(const FockState& a, const FockState& b);

/// One-particle correlations <c_i^dag c_j> in the given state.
Matrix fock_correlations(const FockState& state);

} // namespace nonunitary

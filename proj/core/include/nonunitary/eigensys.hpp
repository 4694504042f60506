#pragma once

#include <vector>

#include "nonunitary/model.hpp"

namespace nonunitary {

/// Biorthonormal eigensystem of a (generally non-Hermitian) Hamiltonian.
/// Column n of right_vecs pairs with column n of left_vecs and energies[n];
/// left_vecs is the inverse-adjoint of right_vecs, so left_vecs^dag *
/// right_vecs is the identity by construction whenever right_vecs is
/// invertible. EP proximity shows up as overlap_cond blowing up and the
/// per-state phase rigidity dropping toward zero.
struct BiorthSystem {
  Eigen::VectorXcd energies; ///< sorted by Re ascending, ties by Im, then index
  Matrix right_vecs;
  Matrix left_vecs;
  double overlap_cond = 0.0;        ///< SVD condition number of right_vecs
  Eigen::VectorXd phase_rigidity;   ///< r_n = |<L_n|R_n>| / (|L_n| |R_n|), in [0, 1]
  double realness_tol = 0.0;        ///< tolerance used for PT classification
};

enum class PtPhase { Preserved, Broken };

/// Half-filled orbital selection with its (complex) total energy.
struct ManyBodyState {
  std::vector<int> occupied; ///< sorted orbital indices, length n_cells
  Complex total_energy;
};

struct EnergyPoint {
  int n_cells = 0;
  double energy = 0.0;
  double overlap_cond = 0.0;
  double min_phase_rigidity = 0.0;
};

/// Default spectral-reality tolerance: 1e-8 * max |H_ij|.
double default_realness_tol(const Hamiltonian& h);

/// Dense non-symmetric eigendecomposition with deterministic ordering.
/// realness_tol < 0 selects the default. Throws std::runtime_error when the
/// right eigenvector matrix is numerically singular (EP-degenerate beyond
/// regularization); the message carries overlap_cond.
BiorthSystem diagonalize(const Hamiltonian& h, double realness_tol = -1.0);

/// Preserved iff max |Im E_n| < realness_tol. realness_tol < 0 uses the
/// tolerance stored in the system.
PtPhase classify_pt(const BiorthSystem& sys, double realness_tol = -1.0);

/// True when the energy multiset matches its conjugate within tol
/// (PT-symmetric spectra are real or come in conjugate pairs).
bool conjugate_pairs_ok(const BiorthSystem& sys, double tol);

/// Occupies the n_cells lowest orbitals in sort order (half filling). A
/// zero-energy EP pair straddling the filling boundary contributes exactly
/// its first member. Throws std::runtime_error on a PT-broken spectrum
/// unless allow_broken is set, in which case the lowest real parts win and
/// conjugate partners with negative real part are both kept by the sort.
ManyBodyState ground_state(const BiorthSystem& sys, bool allow_broken = false);

/// Ground-state energy sweep over chain sizes; impurity coordinates of the
/// template are re-centered per size. threads > 1 diagonalizes sizes in
/// parallel; output order follows `sizes` regardless.
std::vector<EnergyPoint> energy_vs_size(const ChainSpec& spec_template,
                                        const std::vector<int>& sizes,
                                        int threads = 1,
                                        double realness_tol = -1.0,
                                        bool allow_broken = false);

} // namespace nonunitary

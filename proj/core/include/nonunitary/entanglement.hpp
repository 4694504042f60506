#pragma once

#include <vector>

#include "nonunitary/eigensys.hpp"

namespace nonunitary {

/// Occupied-band biorthogonal projector C_ij = sum_occ R_n(i) conj(L_n(j)).
/// Satisfies C^2 = C and trace(C) = #occupied away from EPs.
struct CorrelationMatrix {
  Matrix entries;
  double overlap_cond = 0.0;
  bool ep_warning = false; ///< overlap_cond above threshold; result kept
};

struct EntropySample {
  int cut_cells = 0;   ///< subsystem size L_A in unit cells
  double value = 0.0;  ///< Re S
  double im_residue = 0.0;
  bool flagged = false; ///< |Im S| above 1e-6
};

struct EntropyCurve {
  std::vector<EntropySample> samples;
  double renyi_n = 1.0; ///< 1 selects von Neumann
  int total_cells = 0;
  Boundary boundary = Boundary::PBC;
  double max_im = 0.0; ///< largest imaginary residue across samples
  std::vector<int> impurity_cut_positions; ///< impurity distance from cut origin, in cells
};

inline constexpr double kImFlagTol = 1e-6;
inline constexpr double kEpCondThreshold = 1e6;

CorrelationMatrix correlation_matrix(const BiorthSystem& sys, const ManyBodyState& state);

struct EntropyValue {
  double value = 0.0;
  double im_residue = 0.0;
  bool flagged = false;
};

/// Entropy of the contiguous site range [site_begin, site_begin + site_count)
/// from the spectrum of the corresponding block of C. renyi_n = 1 gives
/// -sum[z ln z + (1-z) ln(1-z)]; otherwise 1/(1-n) sum ln[z^n + (1-z)^n],
/// principal branch, real part returned.
EntropyValue subsystem_entropy(const CorrelationMatrix& c, int site_begin, int site_count,
                               double renyi_n = 1.0);

/// One diagonalization, one entropy sample per cut size (sizes in unit
/// cells, cut grows from cut_origin_site).
EntropyCurve entropy_profile(const ChainSpec& spec, double renyi_n, int cut_origin_site,
                             const std::vector<int>& cut_sizes, double realness_tol = -1.0,
                             bool allow_broken = false);

} // namespace nonunitary

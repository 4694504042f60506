#pragma once

#include <map>
#include <string>
#include <vector>

#include "nonunitary/entanglement.hpp"

namespace nonunitary {

struct FitResult {
  std::map<std::string, double> coefficients;
  double v_fermi = 1.0;
  double residual_rms = 0.0;
  int n_points_used = 0;
  int n_excluded = 0;
  std::string window; ///< human-readable description of the excluded region
};

/// Chord coordinate x = ln[(L/pi) sin(pi L_A / L)] of the Cardy-Calabrese
/// scaling forms (UV cutoff absorbed into the fitted constant).
double chord_log(int total_cells, int cut_cells);

/// Slope-per-unit-central-charge of S vs chord_log: 1/3 (PBC) or 1/6 (OBC)
/// for von Neumann, (n+1)/(6n) or (n+1)/(12n) for Renyi index n.
double entropy_slope_factor(Boundary geometry, double renyi_n);

/// Window controls for fit_entropy. min_cut/max_cut, when non-negative,
/// replace the symmetric end margin; impurity_gap defaults to exclude_margin.
/// include_flagged keeps samples whose imaginary residue exceeded the flag
/// tolerance and fits their real parts (used where the profile is genuinely
/// complex and only Re S scales).
struct EntropyFitOptions {
  int exclude_margin = 4;
  int min_cut = -1;
  int max_cut = -1;
  int impurity_gap = -1;
  bool include_flagged = false;
};

/// OLS of S against the chord coordinate. Drops flagged samples, cuts within
/// exclude_margin cells of either end of the profile, and cuts whose boundary
/// passes within exclude_margin cells of an impurity. coefficients: slope, c,
/// const. Throws on fewer than 4 usable samples or zero variance in x.
FitResult fit_entropy(const EntropyCurve& curve, Boundary geometry, int exclude_margin = 4);
FitResult fit_entropy(const EntropyCurve& curve, Boundary geometry,
                      const EntropyFitOptions& options);

/// OLS of E(L) on the basis {1, L, 1/L, 1/L^2}. coefficients: A, eps_density,
/// B_coeff, C_coeff, c with c = -6B/(pi v_F) for PBC and -24B/(pi v_F) for
/// OBC. Requires >= 5 points with distinct L.
FitResult fit_energy(const std::vector<std::pair<int, double>>& points, Boundary geometry,
                     double v_fermi = 1.0);

} // namespace nonunitary

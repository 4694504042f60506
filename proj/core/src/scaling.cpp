#include "nonunitary/scaling.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nonunitary {

double chord_log(int total_cells, int cut_cells) {
  const double L = total_cells;
  const double la = cut_cells;
  return std::log(L / std::numbers::pi * std::sin(std::numbers::pi * la / L));
}

double entropy_slope_factor(Boundary geometry, double renyi_n) {
  const double n = renyi_n;
  const double pbc = std::abs(n - 1.0) < 1e-12 ? 1.0 / 3.0 : (n + 1.0) / (6.0 * n);
  return geometry == Boundary::OBC ? pbc / 2.0 : pbc;
}

namespace {

struct Ols {
  Eigen::VectorXd coeffs;
  double residual_rms = 0.0;
};

Ols least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols()) throw std::runtime_error("rank-deficient design matrix");
  Ols fit;
  fit.coeffs = qr.solve(y);
  fit.residual_rms = std::sqrt((design * fit.coeffs - y).squaredNorm() / y.size());
  return fit;
}

} // namespace

FitResult fit_entropy(const EntropyCurve& curve, Boundary geometry, int exclude_margin) {
  EntropyFitOptions options;
  options.exclude_margin = exclude_margin;
  return fit_entropy(curve, geometry, options);
}

FitResult fit_entropy(const EntropyCurve& curve, Boundary geometry,
                      const EntropyFitOptions& options) {
  const int lo = options.min_cut >= 0 ? options.min_cut : options.exclude_margin;
  const int hi =
      options.max_cut >= 0 ? options.max_cut : curve.total_cells - options.exclude_margin;
  const int gap = options.impurity_gap >= 0 ? options.impurity_gap : options.exclude_margin;
  std::vector<double> xs, ys;
  int excluded = 0;
  for (const auto& s : curve.samples) {
    bool drop = s.flagged && !options.include_flagged;
    drop = drop || s.cut_cells < lo || s.cut_cells > hi ||
           (options.min_cut < 0 && (s.cut_cells <= lo || s.cut_cells >= hi));
    for (int pos : curve.impurity_cut_positions)
      drop = drop || std::abs(s.cut_cells - pos) <= gap;
    if (drop) {
      ++excluded;
      continue;
    }
    xs.push_back(chord_log(curve.total_cells, s.cut_cells));
    ys.push_back(s.value);
  }
  if (xs.size() < 4) throw std::runtime_error("fit_entropy: fewer than 4 usable samples");

  Eigen::MatrixXd design(xs.size(), 2);
  Eigen::VectorXd y(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    design(i, 0) = xs[i];
    design(i, 1) = 1.0;
    y(i) = ys[i];
  }
  const auto fit = least_squares(design, y);

  FitResult out;
  out.coefficients["slope"] = fit.coeffs(0);
  out.coefficients["c"] = fit.coeffs(0) / entropy_slope_factor(geometry, curve.renyi_n);
  out.coefficients["const"] = fit.coeffs(1);
  out.residual_rms = fit.residual_rms;
  out.n_points_used = static_cast<int>(xs.size());
  out.n_excluded = excluded;
  std::ostringstream w;
  w << "cuts in [" << lo << ", " << hi << "] cells, gap " << gap << " around impurities; "
    << (options.include_flagged ? "flagged samples fitted by real part" : "flagged samples dropped");
  out.window = w.str();
  return out;
}

FitResult fit_energy(const std::vector<std::pair<int, double>>& points, Boundary geometry,
                     double v_fermi) {
  if (points.size() < 5) throw std::runtime_error("fit_energy: need at least 5 points");
  std::set<int> distinct;
  for (const auto& p : points) distinct.insert(p.first);
  if (distinct.size() != points.size())
    throw std::invalid_argument("fit_energy: duplicate chain sizes");

  Eigen::MatrixXd design(points.size(), 4);
  Eigen::VectorXd y(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double L = points[i].first;
    design(i, 0) = 1.0;
    design(i, 1) = L;
    design(i, 2) = 1.0 / L;
    design(i, 3) = 1.0 / (L * L);
    y(i) = points[i].second;
  }
  const auto fit = least_squares(design, y);

  const double b = fit.coeffs(2);
  const double geom = geometry == Boundary::OBC ? 24.0 : 6.0;
  FitResult out;
  out.coefficients["A"] = fit.coeffs(0);
  out.coefficients["eps_density"] = fit.coeffs(1);
  out.coefficients["B_coeff"] = b;
  out.coefficients["C_coeff"] = fit.coeffs(3);
  out.coefficients["c"] = -geom * b / (std::numbers::pi * v_fermi);
  out.v_fermi = v_fermi;
  out.residual_rms = fit.residual_rms;
  out.n_points_used = static_cast<int>(points.size());
  out.n_excluded = 0;
  out.window = "all points used";
  return out;
}

} // namespace nonunitary

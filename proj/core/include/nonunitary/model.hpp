#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "json.hpp"

namespace nonunitary {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Boundary { PBC, OBC, TBC };

std::string boundary_name(Boundary b);
Boundary boundary_from_name(const std::string& name);

/// One PT-symmetric impurity. The 2x2 block added to the on-cell block is
///   [[ i*diag*lambda^2, lambda*offdiag ],
///    [ lambda*offdiag, -i*diag*lambda^2 ]]
/// The uniform-strength impurity is the special case diag == offdiag.
struct ImpuritySpec {
  int cell = 0;         ///< cell coordinate x, chain-centered convention (x = 0 mid-chain)
  double lambda = 0.0;  ///< interpolation strength in [0, 1]
  double diag = 0.0;    ///< imaginary on-site strength (u, or alpha for the generalized form)
  double offdiag = 0.0; ///< intra-cell coupling strength (u, or beta)
};

/// Finite two-band chain: alternating hoppings v1 (intra-cell) and w1
/// (inter-cell), optional impurities, and the boundary closure.
struct ChainSpec {
  int n_cells = 2;
  double v1 = 1.0;
  double w1 = -1.0;
  std::vector<ImpuritySpec> impurities;
  Boundary boundary = Boundary::PBC;
  double phi = 0.0; ///< gauge phase on the closing bond, TBC only

  /// Maps the chain-centered cell coordinate x to the internal index in
  /// [0, n_cells). x = 0 lands mid-chain, x = -floor(n/2) at index 0.
  int internal_cell(int x) const;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;

  ChainSpec with_cells(int cells) const;
  ChainSpec with_lambda(double lambda) const; ///< sets lambda on every impurity
};

struct Hamiltonian {
  Matrix entries;
  int n_cells = 0;
  int dim() const { return 2 * n_cells; }
};

inline int site_a(int cell) { return 2 * cell; }
inline int site_b(int cell) { return 2 * cell + 1; }

/// Dense single-particle Hamiltonian for the spec. Site ordering is
/// cell-major, A before B. PBC closes the chain with the plain w1 bond,
/// TBC multiplies that bond by e^{i phi} (conjugate on the reverse hop),
/// OBC omits it.
Hamiltonian build_hamiltonian(const ChainSpec& spec);

/// Unitary part of the PT operation: sublattice swap A<->B combined with
/// reflection about the chain center (x -> -x). PT acts as this matrix
/// followed by complex conjugation. Symmetric involution.
Eigen::MatrixXd pt_operator(int n_cells);
Eigen::MatrixXd pt_operator(const ChainSpec& spec);

void to_json(nlohmann::json& j, const ImpuritySpec& s);
void from_json(const nlohmann::json& j, ImpuritySpec& s);
void to_json(nlohmann::json& j, const ChainSpec& s);
void from_json(const nlohmann::json& j, ChainSpec& s);

} // namespace nonunitary

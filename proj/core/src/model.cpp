#include "nonunitary/model.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace nonunitary {

std::string boundary_name(Boundary b) {
  switch (b) {
    case Boundary::PBC: return "PBC";
    case Boundary::OBC: return "OBC";
    case Boundary::TBC: return "TBC";
  }
  throw std::logic_error("unknown boundary");
}

Boundary boundary_from_name(const std::string& name) {
  if (name == "PBC") return Boundary::PBC;
  if (name == "OBC") return Boundary::OBC;
  if (name == "TBC") return Boundary::TBC;
  throw std::invalid_argument("unknown boundary: " + name);
}

int ChainSpec::internal_cell(int x) const {
  return x + n_cells / 2;
}

void ChainSpec::validate() const {
  if (n_cells < 2) throw std::invalid_argument("n_cells must be >= 2");
  if (boundary == Boundary::OBC && phi != 0.0)
    throw std::invalid_argument("phi must be 0 under OBC");
  std::set<int> seen;
  for (const auto& imp : impurities) {
    int j = internal_cell(imp.cell);
    if (j < 0 || j >= n_cells)
      throw std::invalid_argument("impurity cell out of range: " + std::to_string(imp.cell));
    if (!seen.insert(j).second)
      throw std::invalid_argument("duplicate impurity cell: " + std::to_string(imp.cell));
    if (imp.lambda < 0.0 || imp.lambda > 1.0)
      throw std::invalid_argument("impurity lambda must lie in [0, 1]");
  }
}

ChainSpec ChainSpec::with_cells(int cells) const {
  ChainSpec out = *this;
  out.n_cells = cells;
  return out;
}

ChainSpec ChainSpec::with_lambda(double lambda) const {
  ChainSpec out = *this;
  for (auto& imp : out.impurities) imp.lambda = lambda;
  return out;
}

Hamiltonian build_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_cells;
  Hamiltonian h;
  h.n_cells = n;
  h.entries = Matrix::Zero(2 * n, 2 * n);
  Matrix& m = h.entries;

  for (int j = 0; j < n; ++j) {
    m(site_a(j), site_b(j)) = spec.v1;
    m(site_b(j), site_a(j)) = spec.v1;
  }
  for (int j = 0; j + 1 < n; ++j) {
    m(site_a(j + 1), site_b(j)) = spec.w1;
    m(site_b(j), site_a(j + 1)) = spec.w1;
  }
  if (spec.boundary != Boundary::OBC) {
    const double phi = spec.boundary == Boundary::TBC ? spec.phi : 0.0;
    const Complex phase = std::polar(1.0, phi);
    m(site_a(0), site_b(n - 1)) = spec.w1 * phase;
    m(site_b(n - 1), site_a(0)) = spec.w1 * std::conj(phase);
  }

  const Complex I(0.0, 1.0);
  for (const auto& imp : spec.impurities) {
    const int j = spec.internal_cell(imp.cell);
    const double l = imp.lambda;
    m(site_a(j), site_a(j)) += I * imp.diag * l * l;
    m(site_b(j), site_b(j)) -= I * imp.diag * l * l;
    m(site_a(j), site_b(j)) += l * imp.offdiag;
    m(site_b(j), site_a(j)) += l * imp.offdiag;
  }
  return h;
}

Eigen::MatrixXd pt_operator(int n_cells) {
  if (n_cells < 1) throw std::invalid_argument("n_cells must be >= 1");
  const int n = n_cells;
  const int center = n / 2; // internal index of x = 0
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const int r = ((2 * center - j) % n + n) % n; // x -> -x
    p(site_b(r), site_a(j)) = 1.0;
    p(site_a(r), site_b(j)) = 1.0;
  }
  return p;
}

Eigen::MatrixXd pt_operator(const ChainSpec& spec) {
  return pt_operator(spec.n_cells);
}

void to_json(nlohmann::json& j, const ImpuritySpec& s) {
  j = nlohmann::json{{"cell", s.cell},
                     {"lambda", s.lambda},
                     {"diag", s.diag},
                     {"offdiag", s.offdiag}};
}

void from_json(const nlohmann::json& j, ImpuritySpec& s) {
  j.at("cell").get_to(s.cell);
  j.at("lambda").get_to(s.lambda);
  j.at("diag").get_to(s.diag);
  j.at("offdiag").get_to(s.offdiag);
}

void to_json(nlohmann::json& j, const ChainSpec& s) {
  j = nlohmann::json{{"n_cells", s.n_cells},
                     {"v1", s.v1},
                     {"w1", s.w1},
                     {"impurities", s.impurities},
                     {"boundary", boundary_name(s.boundary)},
                     {"phi", s.phi}};
}

void from_json(const nlohmann::json& j, ChainSpec& s) {
  j.at("n_cells").get_to(s.n_cells);
  j.at("v1").get_to(s.v1);
  j.at("w1").get_to(s.w1);
  s.impurities = j.value("impurities", std::vector<ImpuritySpec>{});
  s.boundary = boundary_from_name(j.value("boundary", std::string("PBC")));
  s.phi = j.value("phi", 0.0);
}

} // namespace nonunitary

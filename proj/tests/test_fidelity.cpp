#include <cmath>
#include <vector>

#include "doctest.h"
#include "nonunitary/fidelity.hpp"
#include "nonunitary/oracle.hpp"

using namespace nonunitary;

namespace {

ChainSpec hermitian_path(int cells) {
  // diag = 0 keeps the impurity Hermitian along the whole lambda path.
  ChainSpec s;
  s.n_cells = cells;
  s.v1 = 1.0;
  s.w1 = -0.6;
  s.boundary = Boundary::OBC;
  s.impurities = {{0, 0.5, 0.0, 1.3}};
  return s;
}

} // namespace

TEST_CASE("lambda grid spans [0, 1 - eps] uniformly") {
  const auto grid = lambda_grid(1000, 1e-3);
  REQUIRE(grid.size() == 1000);
  CHECK(grid.front() == doctest::Approx(0.0));
  CHECK(grid.back() == doctest::Approx(1.0 - 1e-3));
  const double step = grid[1] - grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i)
    CHECK(grid[i] - grid[i - 1] == doctest::Approx(step).epsilon(1e-10));
  CHECK_THROWS_AS(lambda_grid(1, 1e-3), std::invalid_argument);
}

TEST_CASE("self overlap of a biorthogonal ground state is exactly one") {
  const auto sys = diagonalize(build_hamiltonian(hermitian_path(5)));
  const auto gs = ground_state(sys);
  CHECK(std::abs(gs_overlap(sys, gs, sys, gs) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("Hermitian fidelity matches the Fock oracle") {
  const auto spec = hermitian_path(5);
  const double eps = 0.05;
  const std::vector<double> grid = {0.0, 0.3, 0.6, 0.9};
  const auto curve = fidelity_susceptibility(spec, grid, eps);
  REQUIRE(curve.chi.size() == grid.size());

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto fa = fock_ground_state(build_hamiltonian(spec.with_lambda(grid[i])), 5);
    const auto fb = fock_ground_state(build_hamiltonian(spec.with_lambda(grid[i] + eps)), 5);
    const Complex ov = fock_overlap(fa, fb);
    const double f_expected = std::norm(ov);
    CHECK(curve.fidelity_raw[i].real() == doctest::Approx(f_expected).epsilon(1e-9));
    CHECK(std::abs(curve.fidelity_raw[i].imag()) < 1e-9);
    // Hermitian F = |<a|b>|^2 <= 1, so chi stays non-negative.
    CHECK(curve.chi[i] >= -1e-12);
    CHECK(curve.chi[i] == doctest::Approx((1.0 - f_expected) / (eps * eps)).epsilon(1e-7));
  }
}

TEST_CASE("input validation") {
  const auto spec = hermitian_path(4);
  CHECK_THROWS_AS(fidelity_susceptibility(spec, {0.0, 0.5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fidelity_susceptibility(spec, {0.5, 0.2}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(fidelity_susceptibility(spec, {0.5, 0.5}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(fidelity_susceptibility(spec, {0.9999}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(fidelity_susceptibility(spec, {-0.1, 0.5}, 1e-3), std::invalid_argument);
}

TEST_CASE("mismatched systems are rejected") {
  const auto a = diagonalize(build_hamiltonian(hermitian_path(4)));
  const auto b = diagonalize(build_hamiltonian(hermitian_path(5)));
  const auto ga = ground_state(a);
  const auto gb = ground_state(b);
  CHECK_THROWS_AS(gs_overlap(a, ga, b, gb), std::invalid_argument);
}

TEST_CASE("identical requests give identical curves") {
  const auto spec = hermitian_path(5);
  const auto grid = lambda_grid(8, 0.01);
  const auto c1 = fidelity_susceptibility(spec, grid, 0.01);
  const auto c2 = fidelity_susceptibility(spec, grid, 0.01, /*threads=*/2);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(c1.chi[i] == c2.chi[i]);
}

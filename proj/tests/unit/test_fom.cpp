// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include "oracles.hpp"
#include "rbsweep/errors.hpp"
#include "rbsweep/fom.hpp"
#include "rbsweep/matrix_io.hpp"

using namespace rbsweep;

namespace
{

FullOrderModel one_dof()
{
  return oracle::model(Eigen::MatrixXd::Constant(1, 1, 4.0), Eigen::MatrixXd::Identity(1, 1),
                       Eigen::VectorXd::Ones(1));
}

}  // namespace

TEST_CASE("band validation and grid")
{
  CHECK_THROWS_AS(FrequencyBand(0.0, 1.0), InvalidBand);
  CHECK_THROWS_AS(FrequencyBand(2.0, 1.0), InvalidBand);
  CHECK_THROWS_AS(FrequencyBand(1.0, 1.0), InvalidBand);
  CHECK_THROWS_AS(FrequencyBand(1.0, 2.0, 1), InvalidBand);

  const FrequencyBand band(1.19, 1.6, 1001);
  const auto grid = band.grid();
  REQUIRE(grid.size() == 1001);
  CHECK(grid.front() == 1.19);
  CHECK(grid.back() == 1.6);
  for (std::size_t i = 1; i < grid.size(); i++)
  {
    CHECK(grid[i] > grid[i - 1]);
  }
}

TEST_CASE("assemble")
{
  const FullOrderModel m = one_dof();
  SUBCASE("omega zero gives K and no load")
  {
    const auto chain = make_resonator_chain(4, 1.0, FrequencyBand(0.5, 1.0));
    const SystemInstance s = assemble(chain, 0.0);
    CHECK((oracle::dense(s.A) - oracle::dense(chain.K())).norm() == 0.0);
    CHECK(s.f.norm() == 0.0);
  }
  SUBCASE("scalar")
  {
    const SystemInstance s = assemble(m, 1.0);
    CHECK(oracle::dense(s.A)(0, 0) == doctest::Approx(3.0));
    CHECK(s.f(0) == I1);
  }
  SUBCASE("singular at resonance")
  {
    CHECK(oracle::dense(assemble(m, 2.0).A)(0, 0) == 0.0);
  }
}

TEST_CASE("solve_fom")
{
  const FullOrderModel m = one_dof();
  const ComplexVector x = solve_fom(m, 1.0);
  CHECK(std::abs(x(0) - I1 / 3.0) < 1e-15);
  CHECK_THROWS_AS(solve_fom(m, 2.0), SingularAtResonance);

  SUBCASE("chain against modal sum")
  {
    const auto chain = make_resonator_chain(8, 1.0, FrequencyBand(0.5, 1.9));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense(chain.K()),
                                                                  oracle::dense(chain.M()));
    const double w = 1.2;
    ComplexVector ref = ComplexVector::Zero(8);
    for (int k = 0; k < 8; k++)
    {
      // eigenvectors are M-normalized here, so the plain sum applies
      const Eigen::VectorXd e = es.eigenvectors().col(k);
      ref += (I1 * w * e.dot(chain.b().real()) / (es.eigenvalues()(k) - w * w)) *
             e.cast<std::complex<double>>();
    }
    CHECK(oracle::xnorm(chain, solve_fom(chain, w) - ref) <= 1e-10 * oracle::xnorm(chain, ref));
  }

  SUBCASE("near resonance of a larger model")
  {
    const auto chain = make_resonator_chain(20, 1.0, FrequencyBand(1.19, 1.6));
    const double lambda = oracle::eigenvalues(chain)(9);
    CHECK_THROWS_AS(solve_fom(chain, std::sqrt(lambda)), SingularAtResonance);
    const double w = std::sqrt(lambda) * (1 + 1e-6);
    const ComplexVector x = solve_fom(chain, w);
    const ComplexVector ref = oracle::solve(chain, w);
    CHECK((x - ref).norm() <= 1e-8 * ref.norm());
  }
}

TEST_CASE("x inner product")
{
  const FullOrderModel m = one_dof();
  ComplexVector zero = ComplexVector::Zero(1), one = ComplexVector::Ones(1);
  CHECK(std::abs(x_inner(m, zero, zero)) == 0.0);
  CHECK(std::abs(x_inner(m, one, one) - 5.0) < 1e-15);

  const auto chain = make_resonator_chain(3, 1.0, FrequencyBand(0.5, 1.0));
  std::mt19937_64 rng(7);
  const ComplexVector u = oracle::random_vector(3, rng), v = oracle::random_vector(3, rng);
  const Eigen::MatrixXcd X = oracle::dense(chain.K() + chain.M()).cast<std::complex<double>>();
  CHECK(std::abs(x_inner(chain, u, v) - v.dot(X * u)) < 1e-12);
  CHECK(x_norm(chain, u) == doctest::Approx(oracle::xnorm(chain, u)).epsilon(1e-13));
  // conjugate symmetry
  CHECK(std::abs(x_inner(chain, u, v) - std::conj(x_inner(chain, v, u))) < 1e-12);
}

TEST_CASE("resonator chain")
{
  const FrequencyBand band(0.5, 2.0);
  SUBCASE("n=2")
  {
    const auto m = make_resonator_chain(2, 1.0, band);
    const Eigen::VectorXd l = oracle::eigenvalues(m);
    CHECK(l(0) == doctest::Approx(1.0));
    CHECK(l(1) == doctest::Approx(3.0));
    CHECK((oracle::dense(m.M()) - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
    CHECK((oracle::dense(m.X()) - oracle::dense(m.K()) - Eigen::MatrixXd::Identity(2, 2))
              .norm() == 0.0);
    CHECK((oracle::dense(m.K()) - oracle::dense(m.K()).transpose()).norm() == 0.0);
  }
  SUBCASE("n=3")
  {
    const Eigen::VectorXd l = oracle::eigenvalues(make_resonator_chain(3, 1.0, band));
    CHECK(l(0) == doctest::Approx(2 - std::sqrt(2.0)));
    CHECK(l(1) == doctest::Approx(2.0));
    CHECK(l(2) == doctest::Approx(2 + std::sqrt(2.0)));
  }
  SUBCASE("coupling scales the spectrum")
  {
    const Eigen::VectorXd l = oracle::eigenvalues(make_resonator_chain(2, 2.5, band));
    CHECK(l(0) == doctest::Approx(2.5));
  }
  CHECK_THROWS_AS(make_resonator_chain(1, 1.0, band), ConfigError);
  CHECK_THROWS_AS(make_resonator_chain(4, 0.0, band), ConfigError);
}

TEST_CASE("helmholtz cavity")
{
  const FrequencyBand band(1.0, 5.0);
  SUBCASE("1-D spectrum")
  {
    const auto m = make_helmholtz_cavity(1, 40, band, 13);
    CHECK(m.size() == 39);
    const double l0 = oracle::eigenvalues(m)(0);
    const double pi2 = M_PI * M_PI;
    CHECK(std::abs(l0 - pi2) < 0.01 * pi2);
    CHECK(m.b()(12) == 1.0);
    CHECK(m.b().norm() == 1.0);
  }
  SUBCASE("1-D two elements")
  {
    const auto m = make_helmholtz_cavity(1, 2, band, 1);
    REQUIRE(m.size() == 1);
    const double h = 0.5;
    // interior node shares two elements: K = 2/h, M = 4h/6
    CHECK(oracle::dense(m.K())(0, 0) == doctest::Approx(2 / h));
    CHECK(oracle::dense(m.M())(0, 0) == doctest::Approx(4 * h / 6));
  }
  SUBCASE("2-D structure")
  {
    const auto m = make_helmholtz_cavity(2, 4, band, 6);
    CHECK(m.size() == 9);
    const Eigen::MatrixXd K = oracle::dense(m.K()), M = oracle::dense(m.M());
    CHECK((K - K.transpose()).norm() < 1e-14);
    CHECK((M - M.transpose()).norm() < 1e-14);
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues()(0) > 0);
    // node 6 is (1,1), the first interior node
    CHECK(m.b()(0) == 1.0);
    const double l0 = oracle::eigenvalues(make_helmholtz_cavity(2, 24, band, 30))(0);
    CHECK(std::abs(l0 - 2 * M_PI * M_PI) < 0.02 * 2 * M_PI * M_PI);
  }
  SUBCASE("bad ports and sizes")
  {
    CHECK_THROWS_AS(make_helmholtz_cavity(1, 10, band, 0), InvalidPort);
    CHECK_THROWS_AS(make_helmholtz_cavity(1, 10, band, 10), InvalidPort);
    CHECK_THROWS_AS(make_helmholtz_cavity(2, 4, band, 2), InvalidPort);  // boundary
    CHECK_THROWS_AS(make_helmholtz_cavity(2, 4, band, 25), InvalidPort);
    CHECK_THROWS_AS(make_helmholtz_cavity(3, 4, band, 6), ConfigError);
    CHECK_THROWS_AS(make_helmholtz_cavity(1, 1, band, 1), ConfigError);
  }
}

TEST_CASE("model validation")
{
  const Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::VectorXd b2 = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(oracle::model(Eigen::MatrixXd::Identity(3, 3), I2, b2), DimensionMismatch);
  CHECK_THROWS_AS(oracle::model(I2, I2, Eigen::VectorXd::Ones(3)), DimensionMismatch);
  Eigen::MatrixXd K(2, 2);
  K << 2, -1, 0, 2;
  CHECK_THROWS_AS(oracle::model(K, I2, b2), NotSymmetric);
  Eigen::MatrixXd M(2, 2);
  M << 1, 0, 0, -1;
  CHECK_THROWS_AS(oracle::model(I2, M, b2), MassNotPositiveDefinite);
  CHECK_THROWS_AS(oracle::model(-3 * I2, I2, b2), StiffnessNotSemidefinite);
  // every validation error is a configuration error
  CHECK_THROWS_AS(oracle::model(K, I2, b2), ConfigError);
}

TEST_CASE("import round trip")
{
  const auto dir = oracle::scratch_dir("import");
  const FrequencyBand band(0.5, 2.0);
  const auto chain = make_resonator_chain(2, 1.0, band);
  write_matrix_market((dir / "K.mtx").string(), chain.K());
  write_matrix_market((dir / "M.mtx").string(), chain.M());
  write_vector((dir / "b.txt").string(), chain.b());
  const auto m =
      import_model((dir / "K.mtx").string(), (dir / "M.mtx").string(), (dir / "b.txt").string(),
                   band);
  CHECK((oracle::dense(m.K()) - oracle::dense(chain.K())).norm() == 0.0);
  CHECK((oracle::dense(m.M()) - oracle::dense(chain.M())).norm() == 0.0);
  CHECK((m.b() - chain.b()).norm() == 0.0);

  write_matrix_market((dir / "M3.mtx").string(), make_resonator_chain(3, 1.0, band).M());
  CHECK_THROWS_AS(import_model((dir / "K.mtx").string(), (dir / "M3.mtx").string(),
                               (dir / "b.txt").string(), band),
                  DimensionMismatch);
}

TEST_CASE("dual norm through the cached factorization")
{
  const auto chain = make_resonator_chain(6, 1.0, FrequencyBand(0.5, 1.0));
  std::mt19937_64 rng(3);
  const ComplexVector r = oracle::random_vector(6, rng);
  const Eigen::MatrixXcd X = oracle::dense(chain.X()).cast<std::complex<double>>();
  const double ref = std::sqrt(std::real(r.dot(X.ldlt().solve(r))));
  CHECK(chain.dual_norm(r) == doctest::Approx(ref).epsilon(1e-12));
  CHECK((chain.solve_x(r) - X.ldlt().solve(r)).norm() < 1e-12 * r.norm());
  // copies share the factorization
  const FullOrderModel moved = chain.with_band(FrequencyBand(1.0, 2.0));
  CHECK(moved.dual_norm(r) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(moved.band().omega_min() == 1.0);
}

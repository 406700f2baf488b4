// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>
#include <doctest.h>
#include "oracles.hpp"
#include "rbsweep/config.hpp"
#include "rbsweep/csv.hpp"
#include "rbsweep/errors.hpp"
#include "rbsweep/matrix_io.hpp"

using namespace rbsweep;

namespace
{

std::string write_text(const std::filesystem::path &path, const std::string &text)
{
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("matrix market reader")
{
  const auto dir = oracle::scratch_dir("mm");
  SUBCASE("symmetric storage is expanded")
  {
    const auto p = write_text(dir / "a.mtx", "%%MatrixMarket matrix coordinate real symmetric\n"
                                             "% a comment\n"
                                             "\n"
                                             "3 3 4\n"
                                             "1 1 2.0\n"
                                             "2 1 -1\n"
                                             "3 2 -1.5e0\n"
                                             "3 3 4\n");
    const Eigen::MatrixXd A = oracle::dense(read_matrix_market(p));
    Eigen::MatrixXd ref(3, 3);
    ref << 2, -1, 0, -1, 0, -1.5, 0, -1.5, 4;
    CHECK((A - ref).norm() == 0.0);
  }
  SUBCASE("general integer storage")
  {
    const auto p = write_text(dir / "b.mtx", "%%MatrixMarket matrix coordinate integer general\n"
                                             "2 2 3\n1 1 1\n1 2 5\n2 2 7\n");
    const Eigen::MatrixXd A = oracle::dense(read_matrix_market(p));
    CHECK(A(0, 1) == 5.0);
    CHECK(A(1, 0) == 0.0);
  }
  SUBCASE("errors carry the line")
  {
    const auto p = write_text(dir / "c.mtx", "%%MatrixMarket matrix coordinate real general\n"
                                             "2 2 2\n1 1 1\n3 1 1\n");
    try
    {
      read_matrix_market(p);
      FAIL("expected ParseError");
    }
    catch (const ParseError &e)
    {
      CHECK(std::string(e.what()).find(":4:") != std::string::npos);
    }
    CHECK_THROWS_AS(read_matrix_market(write_text(dir / "d.mtx", "not a matrix\n")), ParseError);
    CHECK_THROWS_AS(read_matrix_market(write_text(dir / "e.mtx",
                                                  "%%MatrixMarket matrix coordinate real general\n"
                                                  "2 2 3\n1 1 1\n")),
                    ParseError);
    CHECK_THROWS_AS(read_matrix_market((dir / "missing.mtx").string()), ParseError);
  }
  SUBCASE("write then read")
  {
    const auto chain = make_resonator_chain(5, 1.3, FrequencyBand(0.5, 1.0));
    write_matrix_market((dir / "k.mtx").string(), chain.K());
    write_matrix_market((dir / "kg.mtx").string(), chain.K(), false);
    CHECK((oracle::dense(read_matrix_market((dir / "k.mtx").string())) -
           oracle::dense(chain.K()))
              .norm() == 0.0);
    CHECK((oracle::dense(read_matrix_market((dir / "kg.mtx").string())) -
           oracle::dense(chain.K()))
              .norm() == 0.0);
  }
}

TEST_CASE("vector and dense matrix files")
{
  const auto dir = oracle::scratch_dir("vec");
  const auto p = write_text(dir / "b.txt", "# excitation\n1 0\n0.5 -2\n% x\n3\n");
  const ComplexVector b = read_vector(p);
  REQUIRE(b.size() == 3);
  CHECK(b(1) == std::complex<double>(0.5, -2));
  CHECK(b(2) == std::complex<double>(3, 0));
  CHECK_THROWS_AS(read_vector(write_text(dir / "bad.txt", "1 x\n")), ParseError);

  std::mt19937_64 rng(5);
  ComplexMatrix A(4, 3);
  for (int j = 0; j < 3; j++)
  {
    A.col(j) = oracle::random_vector(4, rng);
  }
  write_dense_matrix((dir / "A.mtx").string(), A);
  const ComplexMatrix B = read_dense_matrix((dir / "A.mtx").string());
  CHECK((A - B).norm() == 0.0);
  write_vector((dir / "v.txt").string(), A.col(1));
  CHECK((read_vector((dir / "v.txt").string()) - A.col(1)).norm() == 0.0);
}

TEST_CASE("sweep csv round trip")
{
  SweepOutput s;
  s.omega = {1.0, 1.5, 2.0};
  s.y = {{0.1, -0.2}, {1e-17, 3.0}, {-4.0, 0.0}};
  s.residual_dual_norm = {1e-3, 2e-9, 0.0};
  s.state_estimate = {1.0 / 3.0, 2.0, 5e-300};
  s.rom_seconds = 1e-6;
  s.fom_seconds = 2e-3;
  std::stringstream ss;
  write_sweep(ss, s);
  const SweepOutput r = read_sweep(ss);
  CHECK(r.omega == s.omega);
  CHECK(r.y == s.y);
  CHECK(r.residual_dual_norm == s.residual_dual_norm);
  CHECK(r.state_estimate == s.state_estimate);
  REQUIRE(r.rom_seconds);
  CHECK(*r.rom_seconds == *s.rom_seconds);
  CHECK(*r.fom_seconds == *s.fom_seconds);

  std::stringstream bad("omega,re_y\n1,2\n");
  CHECK_THROWS_AS(read_sweep(bad), ParseError);
  std::stringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_csv(ragged), ParseError);
  std::stringstream empty("# only a comment\n");
  CHECK_THROWS_AS(read_csv(empty), ParseError);
}

TEST_CASE("trace csv schema")
{
  GreedyTrace t;
  t.strategy = Strategy::algorithm2;
  t.seed = 9;
  t.converged = true;
  t.notes = {"endpoint omega_min from seed 9"};
  TraceRow eig;
  eig.iter = 1;
  eig.omega = 1.25;
  eig.xi = 1.0;
  eig.phase = Phase::eigen;
  eig.m_primal = 1;
  eig.m_residual = 2;
  TraceRow g = eig;
  g.iter = 2;
  g.xi = 0.01;
  g.eps_true = 0.02;
  g.eps_state = 0.01;
  g.phase = Phase::greedy;
  g.m_primal = 2;
  g.m_residual = 3;
  t.rows = {eig, g};
  t.final_eps_true = 1e-8;

  std::stringstream ss;
  write_trace(ss, t);
  const CsvTable table = read_csv(ss);
  CHECK(table.header == std::vector<std::string>{"iter", "omega", "xi", "eps_true", "eps_state",
                                                 "eps_res", "m_primal", "m_residual"});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][2] == "1");
  CHECK(table.rows[0][3].empty());
  CHECK(table.rows[1][3] == "0.02");
  CHECK(table.rows[1][5].empty());
  CHECK(table.comments.front() == "strategy=algorithm2 seed=9 converged=true");
  CHECK(table.comments.back() == "final_eps_true=1e-08");

  std::stringstream cmp;
  write_comparison(cmp, {t});
  const CsvTable c = read_csv(cmp);
  CHECK(c.header.front() == "strategy");
  CHECK(c.header.back() == "effectivity");
  CHECK(c.rows[0].back().empty());
  CHECK(std::stod(c.rows[1].back()) == doctest::Approx(0.5));

  std::stringstream sum;
  write_summary(sum, {t});
  const CsvTable s = read_csv(sum);
  REQUIRE(s.rows.size() == 1);
  CHECK(s.rows[0] == std::vector<std::string>{"algorithm2", "true", "2", "2", "3", "1e-08"});
}

TEST_CASE("config parsing")
{
  SUBCASE("full file")
  {
    std::stringstream in("# chain\n"
                         "model.generator = chain\n"
                         "model.n = 12   # trailing comment\n"
                         "band.omega_min = 1.0\n"
                         "band.omega_max = 2.0\n"
                         "band.grid_size = 51\n"
                         "greedy.tol = 1e-6\n"
                         "greedy.seed = 42\n"
                         "greedy.strategies = algorithm1, residual_baseline\n"
                         "oracle.snapshots = 1.1, 1.9\n"
                         "output.basis = false\n");
    const RunConfig c = parse_config(in);
    CHECK(c.model.n == 12);
    CHECK(c.grid_size == 51);
    CHECK(c.greedy.tol == 1e-6);
    CHECK(c.greedy.seed == 42);
    CHECK(c.strategies ==
          std::vector<Strategy>{Strategy::algorithm1, Strategy::residual_baseline});
    CHECK(c.oracle.snapshots == std::vector<double>{1.1, 1.9});
    CHECK(!c.write_basis);
    const FullOrderModel m = build_model(c);
    CHECK(m.size() == 12);
    CHECK(m.band().grid_size() == 51);
  }
  SUBCASE("errors")
  {
    auto parse = [](const std::string &text)
    {
      std::stringstream in(text);
      return parse_config(in);
    };
    const std::string band = "band.omega_min = 1\nband.omega_max = 2\n";
    CHECK_THROWS_AS(parse("model.n = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse(band + "model.nn = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse(band + "model.n = four\n"), ParseError);
    CHECK_THROWS_AS(parse(band + "model.n 4\n"), ParseError);
    CHECK_THROWS_AS(parse(band + "greedy.tol = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse(band + "greedy.max_iters = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse(band + "greedy.strategies = algorithm3\n"), ConfigError);
    CHECK_THROWS_AS(parse("band.omega_min = 2\nband.omega_max = 1\n"), InvalidBand);
    CHECK_NOTHROW(parse(band));
  }
  SUBCASE("import paths resolve against the config file")
  {
    const auto dir = oracle::scratch_dir("cfg");
    const auto chain = make_resonator_chain(3, 1.0, FrequencyBand(0.5, 1.0));
    write_matrix_market((dir / "K.mtx").string(), chain.K());
    write_matrix_market((dir / "M.mtx").string(), chain.M());
    write_vector((dir / "b.txt").string(), chain.b());
    write_text(dir / "run.cfg", "model.generator = import\nmodel.K = K.mtx\nmodel.M = M.mtx\n"
                                "model.b = b.txt\nband.omega_min = 0.5\nband.omega_max = 1\n");
    const FullOrderModel m = build_model(load_config((dir / "run.cfg").string()));
    CHECK(m.size() == 3);
    CHECK_THROWS_AS(load_config((dir / "nope.cfg").string()), ConfigError);
  }
}

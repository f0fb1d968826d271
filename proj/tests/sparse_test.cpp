#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "mbas/fem.hpp"
#include "mbas/market.hpp"
#include "mbas/sparse.hpp"
#include "oracles.hpp"

using namespace mbas;
using testutil::rel_err;

namespace {

SpMat from_dense(const Mat& D) {
  std::vector<Triplet> t;
  for (Index i = 0; i < D.rows(); ++i)
    for (Index j = 0; j < D.cols(); ++j)
      if (D(i, j) != 0.0) t.emplace_back(i, j, D(i, j));
  SpMat A(D.rows(), D.cols());
  A.setFromTriplets(t.begin(), t.end());
  A.makeCompressed();
  return A;
}

}  // namespace

TEST_CASE("spmv basics") {
  SpMat I3(3, 3);
  I3.setIdentity();
  Vec x(3);
  x << 1, 2, 3;
  CHECK((spmv(I3, x) - x).norm() == 0.0);

  Mat D(2, 2);
  D << 4, 1, 1, 3;
  const SpMat A = from_dense(D);
  Vec e0(2);
  e0 << 1, 0;
  const Vec y = spmv(A, e0);
  CHECK(y[0] == 4.0);
  CHECK(y[1] == 1.0);

  const Grid g(1);
  Vec one(1);
  one << 1;
  CHECK(rel_err(spmv(assemble_mass(g), one)[0], 1.0 / 9.0) < 1e-15);

  Vec bad(3);
  CHECK_THROWS_AS(spmv(A, bad), DimensionError);
}

TEST_CASE("spmv is linear") {
  const Grid g(3);
  const SpMat K = assemble_stiffness(g);
  const Index m = g.node_count();
  for (int t = 0; t < 5; ++t) {
    const Vec x = testutil::random_vec(m), y = testutil::random_vec(m);
    const double a = testutil::uniform(-2, 2), b = testutil::uniform(-2, 2);
    const Vec lhs = spmv(K, Vec(a * x + b * y));
    const Vec rhs = a * spmv(K, x) + b * spmv(K, y);
    CHECK((lhs - rhs).norm() <= 1e-13 * rhs.norm());
  }
}

TEST_CASE("spmv_complex matches the componentwise oracle") {
  SpMat I2(2, 2);
  I2.setIdentity();
  CVec x(2);
  x << Complex(0, 1), Complex(1, -1);
  CHECK((spmv_complex(I2, x) - x).norm() == 0.0);

  const Grid g(2);
  const SpMat M = assemble_mass(g);
  const Index m = g.node_count();

  CVec real_only(m);
  real_only.real() = testutil::random_vec(m);
  real_only.imag().setZero();
  CHECK(spmv_complex(M, real_only).imag().norm() == 0.0);

  const CVec z = testutil::random_cvec(m);
  const CVec w = spmv_complex(M, z);
  CHECK((w.real() - spmv(M, Vec(z.real()))).norm() == 0.0);
  CHECK((w.imag() - spmv(M, Vec(z.imag()))).norm() == 0.0);
}

TEST_CASE("cg solves the 2x2 system from the elimination oracle") {
  Mat D(2, 2);
  D << 4, 1, 1, 3;
  Vec b(2);
  b << 1, 2;
  // elimination: x = (1/11) * (3*1 - 1*2, -1*1 + 4*2)
  const auto r = cg_solve(from_dense(D), b, 1e-14, 50);
  CHECK(rel_err(r.x[0], 1.0 / 11.0) < 1e-12);
  CHECK(rel_err(r.x[1], 7.0 / 11.0) < 1e-12);
}

TEST_CASE("cg edge cases") {
  const Grid g(3);
  const SpMat M = assemble_mass(g);

  const auto zero = cg_solve(M, Vec::Zero(M.rows()), 1e-12, 10);
  CHECK(zero.iterations == 0);
  CHECK(zero.x.norm() == 0.0);

  const Vec b = testutil::random_vec(M.rows());
  const auto r = cg_solve(M, b, 1e-12, 1000);
  CHECK((b - M * r.x).norm() <= 1e-12 * b.norm());

  try {
    cg_solve(assemble_stiffness(g), b, 1e-15, 1);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations == 1);
    CHECK(e.last_residual > 0);
  }
}

TEST_CASE("direct factor examples and reuse linearity") {
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 2;
  D(1, 1) = 3;
  const SpdFactor f(from_dense(D));
  Vec b(2);
  b << 2, 3;
  const Vec x = f.solve(b);
  CHECK(rel_err(x[0], 1.0) < 1e-15);
  CHECK(rel_err(x[1], 1.0) < 1e-15);

  const Grid g(5);
  const SpMat M = assemble_mass(g);
  const SpdFactor fm(M);
  const Vec rb = testutil::random_vec(M.rows());
  const Vec xr = fm.solve(rb);
  CHECK((rb - M * xr).norm() <= 1e-10 * rb.norm());
  const Vec x2 = fm.solve(Vec(2 * rb));
  CHECK((x2 - 2 * xr).norm() <= 1e-14 * x2.norm());
}

TEST_CASE("factor rejects indefinite matrices") {
  Mat D(2, 2);
  D << 1, 2, 2, 1;  // eigenvalues 3, -1
  CHECK_THROWS_AS(SpdFactor(from_dense(D)), NotPositiveDefiniteError);
}

TEST_CASE("factor round trip: solve(A x) = x") {
  const Grid g(3);
  const SpMat K = assemble_stiffness(g);
  const SpdFactor f(K);
  for (int t = 0; t < 5; ++t) {
    const Vec x = testutil::random_vec(K.rows());
    const Vec back = f.solve(Vec(K * x));
    CHECK((back - x).norm() <= 1e-10 * x.norm());
  }
}

TEST_CASE("cg and direct solves agree at m <= 1024") {
  const Grid g(5);  // m = 961
  const SpMat M = assemble_mass(g);
  const SpdFactor f(M);
  const Vec b = testutil::random_vec(M.rows());
  const Vec xd = f.solve(b);
  const Vec xc = cg_solve(M, b, 1e-12, 5000).x;
  CHECK((xc - xd).norm() <= 1e-8 * xd.norm());
}

TEST_CASE("frobenius norm") {
  SpMat I9(9, 9);
  I9.setIdentity();
  CHECK(rel_err(frob_norm(I9), 3.0) < 1e-15);

  Mat D(1, 2);
  D << 3, 4;
  CHECK(frob_norm(from_dense(D)) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("symmetry validator") {
  const Grid g(2);
  CHECK(is_symmetric(assemble_mass(g)));
  Mat D(2, 2);
  D << 1, 2, 3, 1;
  CHECK(!is_symmetric(from_dense(D)));
}

TEST_CASE("inner solver: direct and cg produce the same solution") {
  const Grid g(3);
  const SpMat S = shifted(0.37, assemble_stiffness(g), 2.0);
  const InnerSolver direct(S, Inner{Inner::Kind::direct, 0});
  const InnerSolver cg(S, Inner{Inner::Kind::cg, 1e-13});
  const Vec b = testutil::random_vec(S.rows());
  CHECK((direct.solve(b) - cg.solve(b)).norm() <= 1e-9 * b.norm());
}

TEST_CASE("inner parsing") {
  CHECK(Inner::parse("direct").kind == Inner::Kind::direct);
  const Inner c = Inner::parse("cg:1e-10");
  CHECK(c.kind == Inner::Kind::cg);
  CHECK(c.cg_tol == 1e-10);
  CHECK_THROWS_AS(Inner::parse("lu"), ParameterError);
}

TEST_CASE("general matrix-market files and vectors round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mbas_sparse_test";
  fs::create_directories(dir);

  Mat D(2, 3);
  D << 1.5, 0, -2.25, 0, 0.1234567890123456789, 0;
  const SpMat A = from_dense(D);
  const std::string mpath = (dir / "A.mtx").string();
  write_matrix_market(mpath, A, /*symmetric=*/false);
  const SpMat B = read_matrix_market(mpath);
  REQUIRE(B.rows() == 2);
  REQUIRE(B.cols() == 3);
  CHECK(B.coeff(1, 1) == D(1, 1));  // bitwise
  CHECK(B.coeff(0, 2) == -2.25);

  const Vec v = testutil::random_vec(17);
  const std::string vpath = (dir / "v.txt").string();
  write_vector(vpath, v);
  const Vec w = read_vector(vpath);
  REQUIRE(w.size() == v.size());
  CHECK((w - v).norm() == 0.0);
  fs::remove_all(dir);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "mbas/dense.hpp"
#include "mbas/params.hpp"
#include "oracles.hpp"

using namespace mbas;
using testutil::make_bundle;
using testutil::rel_err;

TEST_CASE("theta arithmetic and validation") {
  CHECK(theta(1e-2, 1e4) == 1000001.0);
  CHECK(theta(1.0, 0.0) == 1.0);
  CHECK(theta(1e-8, 1e-4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(theta(0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(theta(-1.0, 1.0), ParameterError);
}

TEST_CASE("alpha_est matches the tensor-product Frobenius closed form") {
  // ||M||_F = ||M1||_F^2 for the tensor-product mass matrix
  for (int k : {2, 3}) {
    const Grid g(k);
    const int n = g.cells_per_side();
    const double h = g.h();
    const Index n1 = g.interior_per_side();
    const double f1d_sq = (h * h / 36.0) * (16.0 * n1 + 2.0 * (n1 - 1));
    const double expected_frob = f1d_sq;  // ||M1||_F^2
    const SystemBundle s = make_bundle(k, 1e-2, 10.0);
    const double expected = s.params.theta() * expected_frob / std::sqrt(double(g.node_count()));
    CHECK(rel_err(alpha_est(s), expected) < 1e-13);
    (void)n;
  }
}

TEST_CASE("phi vanishes at alpha_est and uses the verified closed-form norms") {
  const SystemBundle s = make_bundle(2, 1e-2, 10.0);
  const double a = alpha_est(s);
  const double m = static_cast<double>(s.m());
  // magnitude scale of phi near alpha_est
  const double scale = (1.0 / a) * std::sqrt(m) *
                       (s.params.theta() * std::sqrt(2.0) * frob_norm(s.M)) *
                       (a * std::sqrt(2 * m) + std::sqrt(2.0) * frob_norm(s.K));
  CHECK(std::abs(phi(s, a)) <= 1e-12 * scale);
  CHECK(phi(s, 2 * a) != 0.0);
  CHECK_THROWS_AS(phi(s, 0.0), ParameterError);

  // ||(I+R)^{-1}||_F = sqrt(m') for order m' blocks, checked densely
  const Index m2 = s.m();
  const CMat R = dense::dense_R(s.params.nu, s.params.omega, m2);
  const CMat I = CMat::Identity(2 * m2, 2 * m2);
  const double norm_inv = (I + R).partialPivLu().inverse().norm();
  CHECK(rel_err(norm_inv, std::sqrt(double(m2))) < 1e-10);

  // ||R H2||_F = ||H2||_F since R is unitary
  CMat H2 = CMat::Zero(2 * m2, 2 * m2);
  H2.topLeftCorner(m2, m2) = dense::to_dense(s.K).cast<Complex>();
  H2.bottomRightCorner(m2, m2) = dense::to_dense(s.K).cast<Complex>();
  CHECK(rel_err((R * H2).norm(), H2.norm()) < 1e-12);
}

TEST_CASE("eta bound: single-point spectra give exactly 1/2") {
  const double nu = 1e-3, omega = 7.0;
  const double th = theta(nu, omega);
  const double a = 0.42;
  const SpectralExtremes lam{a / th, a / th, "dense", 0};
  const SpectralExtremes mu{a / std::sqrt(nu * th), a / std::sqrt(nu * th), "dense", 0};
  CHECK(rel_err(eta_bound(a, lam, mu, nu, omega), 0.5) < 1e-12);
}

TEST_CASE("eta bound equals the brute-force maximum over the full spectrum") {
  const SystemBundle s = make_bundle(2, 1e-4, 10.0);
  const double nu = s.params.nu, omega = s.params.omega;
  const double th = s.params.theta();
  const auto lam = eig_extremes(s.M);
  const auto mu = eig_extremes(s.K);
  Eigen::SelfAdjointEigenSolver<Mat> em(dense::to_dense(s.M), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Mat> ek(dense::to_dense(s.K), Eigen::EigenvaluesOnly);

  for (double a : {3e-5, 3e-4, 3e-3}) {
    double chi_all = 0, vt_all = 0;
    for (Index i = 0; i < em.eigenvalues().size(); ++i)
      chi_all = std::max(chi_all, chi_factor(a, em.eigenvalues()[i], th));
    for (Index i = 0; i < ek.eigenvalues().size(); ++i)
      vt_all = std::max(vt_all, vartheta_factor(a, ek.eigenvalues()[i], nu, th));
    CHECK(rel_err(eta_bound(a, lam, mu, nu, omega), chi_all * vt_all) < 1e-12);
    CHECK(chi_all < 1.0);
    CHECK(vt_all < 1.0);
    CHECK(eta_bound(a, lam, mu, nu, omega) > 0.0);
    CHECK(eta_bound(a, lam, mu, nu, omega) < 1.0);
  }
  CHECK_THROWS_AS(eta_bound(1.0, SpectralExtremes{-1, 1, "", 0}, mu, nu, omega),
                  ParameterError);
}

TEST_CASE("the bound dominates the spectral radius on random parameters") {
  const SystemBundle s0 = make_bundle(2, 1.0, 1.0);
  const Mat Md = dense::to_dense(s0.M), Kd = dense::to_dense(s0.K);
  const auto lam = eig_extremes(s0.M);
  const auto mu = eig_extremes(s0.K);

  for (int t = 0; t < 5; ++t) {
    const double nu = testutil::log_uniform(1e-8, 1e-2);
    const double omega = testutil::log_uniform(1e-4, 1e4);
    const SystemBundle s = make_bundle(2, nu, omega);
    const double aest = alpha_est(s);
    for (double a : {aest / 10, aest, 10 * aest}) {
      const auto split = dense::build_splitting_dense(Md, Kd, nu, omega, a);
      const double rho = dense::spectral_radius(CMat(split.B.partialPivLu().solve(split.C)));
      const double eta = eta_bound(a, lam, mu, nu, omega);
      CHECK(rho < 1.0);
      CHECK(rho <= eta + 1e-6);
    }
  }
}

TEST_CASE("alpha1 and alpha2 minimize their factors on a log grid") {
  const SystemBundle s = make_bundle(3, 1e-4, 100.0);
  const double nu = s.params.nu;
  const double th = s.params.theta();
  const auto lam = eig_extremes(s.M);
  const auto mu = eig_extremes(s.K);

  const double a1 = th * std::sqrt(lam.min_eig * lam.max_eig);
  const double a2 = std::sqrt(nu * th * mu.min_eig * mu.max_eig);
  auto chi_max = [&](double a) {
    return std::max(chi_factor(a, lam.min_eig, th), chi_factor(a, lam.max_eig, th));
  };
  auto vt_max = [&](double a) {
    return std::max(vartheta_factor(a, mu.min_eig, nu, th),
                    vartheta_factor(a, mu.max_eig, nu, th));
  };
  for (int i = 0; i < 20; ++i) {
    const double a = a1 * std::pow(10.0, -2.0 + 4.0 * i / 19.0);
    CHECK(chi_max(a1) <= chi_max(a) + 1e-12);
  }
  for (int i = 0; i < 20; ++i) {
    const double a = a2 * std::pow(10.0, -2.0 + 4.0 * i / 19.0);
    CHECK(vt_max(a2) <= vt_max(a) + 1e-12);
  }
}

TEST_CASE("eig_extremes on explicit matrices") {
  std::vector<Triplet> t{{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 3.0}};
  SpMat D(3, 3);
  D.setFromTriplets(t.begin(), t.end());
  const auto e = eig_extremes(D);
  CHECK(e.method == "dense");
  CHECK(e.min_eig == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.max_eig == doctest::Approx(3.0).epsilon(1e-14));

  const Grid g1(1);
  const auto em = eig_extremes(assemble_mass(g1));
  CHECK(rel_err(em.min_eig, 1.0 / 9.0) < 1e-13);
  CHECK(rel_err(em.max_eig, 1.0 / 9.0) < 1e-13);
}

TEST_CASE("iterative extremes match the dense solve at k=3") {
  const Grid g(3);
  for (const SpMat& A : {assemble_mass(g), assemble_stiffness(g)}) {
    const auto d = eig_extremes(A, 1e-6, EigMethod::dense);
    const auto it = eig_extremes(A, 1e-8, EigMethod::iterative);
    CHECK(it.method == "lanczos");
    CHECK(rel_err(it.min_eig, d.min_eig) < 1e-5);
    CHECK(rel_err(it.max_eig, d.max_eig) < 1e-5);
  }
}

TEST_CASE("iterative extremes fail loudly when capped too tightly") {
  const Grid g(3);
  CHECK_THROWS_AS(eig_extremes(assemble_stiffness(g), 1e-12, EigMethod::iterative, 3),
                  EigenSolveError);
}

TEST_CASE("alpha policies resolve per their formulas") {
  const SystemBundle s = make_bundle(2, 1.0, 1.0);
  AlphaCache cache;
  CHECK(resolve_alpha(AlphaPolicy{AlphaPolicy::Kind::bas_iteration, 0}, s) == 2.0);
  CHECK(resolve_alpha(AlphaPolicy{AlphaPolicy::Kind::bas_preconditioner, 0}, s) == 1.0);
  CHECK(resolve_alpha(AlphaPolicy{AlphaPolicy::Kind::custom, 0.125}, s) == 0.125);
  CHECK(resolve_alpha(AlphaPolicy{AlphaPolicy::Kind::estimated, 0}, s) ==
        doctest::Approx(alpha_est(s)).epsilon(1e-15));

  const auto lam = eig_extremes(s.M);
  const double root = std::sqrt(lam.min_eig * lam.max_eig);
  CHECK(rel_err(resolve_alpha(AlphaPolicy{AlphaPolicy::Kind::asss_default, 0}, s, &cache),
                root) < 1e-10);
  CHECK(rel_err(resolve_alpha(AlphaPolicy{AlphaPolicy::Kind::remark_alpha1, 0}, s, &cache),
                s.params.theta() * root) < 1e-10);
  const auto mu = eig_extremes(s.K);
  CHECK(rel_err(resolve_alpha(AlphaPolicy{AlphaPolicy::Kind::remark_alpha2, 0}, s, &cache),
                std::sqrt(s.params.nu * s.params.theta() * mu.min_eig * mu.max_eig)) < 1e-10);
  CHECK(cache.mass.has_value());
  CHECK(cache.stiffness.has_value());
}

TEST_CASE("alpha policy parsing") {
  CHECK(AlphaPolicy::parse("est").kind == AlphaPolicy::Kind::estimated);
  CHECK(AlphaPolicy::parse("bas-iteration").kind == AlphaPolicy::Kind::bas_iteration);
  CHECK(AlphaPolicy::parse("custom:0.5").value == 0.5);
  CHECK(AlphaPolicy::parse("alpha2").name() == "alpha2");
  CHECK_THROWS_AS(AlphaPolicy::parse("optimal"), ParameterError);
  CHECK_THROWS_AS(AlphaPolicy::parse("custom:-1"), ParameterError);
}

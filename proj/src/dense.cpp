#include "mbas/dense.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace mbas {
namespace dense {

namespace {

constexpr Index kMaxOrder = 225;

CMat block2(const CMat& a11, const CMat& a12, const CMat& a21, const CMat& a22) {
  const Index m = a11.rows();
  CMat out(2 * m, 2 * m);
  out.topLeftCorner(m, m) = a11;
  out.topRightCorner(m, m) = a12;
  out.bottomLeftCorner(m, m) = a21;
  out.bottomRightCorner(m, m) = a22;
  return out;
}

}  // namespace

Mat to_dense(const SpMat& A) { return Mat(A); }

CMat dense_A(const Mat& M, const Mat& K, double nu, double omega) {
  const double sn = std::sqrt(nu);
  const Complex i(0.0, 1.0);
  const CMat Mc = M.cast<Complex>();
  const CMat Kc = K.cast<Complex>();
  return block2(Mc, sn * (Kc - i * omega * Mc), sn * (Kc + i * omega * Mc), -Mc);
}

CMat dense_Atilde(const Mat& M, const Mat& K, double nu, double omega) {
  const double th = 1.0 + nu * omega * omega;
  const Index m = M.rows();
  CMat H1 = CMat::Zero(2 * m, 2 * m), H2 = CMat::Zero(2 * m, 2 * m);
  H1.topLeftCorner(m, m) = M.cast<Complex>();
  H1.bottomRightCorner(m, m) = M.cast<Complex>();
  H2.topLeftCorner(m, m) = K.cast<Complex>();
  H2.bottomRightCorner(m, m) = K.cast<Complex>();
  return th * H1 + std::sqrt(nu * th) * dense_R(nu, omega, m) * H2;
}

Mat dense_Areal(const Mat& M, const Mat& K, double nu, double omega) {
  const double sn = std::sqrt(nu);
  const double ws = omega * sn;
  const Index m = M.rows();
  Mat out = Mat::Zero(4 * m, 4 * m);
  auto blk = [&](int i, int j) { return out.block(i * m, j * m, m, m); };
  blk(0, 0) = M;
  blk(0, 2) = sn * K;
  blk(0, 3) = ws * M;
  blk(1, 1) = M;
  blk(1, 2) = -ws * M;
  blk(1, 3) = sn * K;
  blk(2, 0) = sn * K;
  blk(2, 1) = -ws * M;
  blk(2, 2) = -M;
  blk(3, 0) = ws * M;
  blk(3, 1) = sn * K;
  blk(3, 3) = -M;
  return out;
}

CMat dense_R(double nu, double omega, Index m) {
  const double f = 1.0 / std::sqrt(nu * (1.0 + nu * omega * omega));
  const Complex iwn(0.0, omega * nu);
  const double sn = std::sqrt(nu);
  const CMat I = CMat::Identity(m, m);
  return f * block2(-iwn * I, sn * I, -sn * I, iwn * I);
}

CMat dense_R1(double nu, double omega, Index m) {
  const Complex iws(0.0, omega * std::sqrt(nu));
  const CMat I = CMat::Identity(m, m);
  return block2(I, -iws * I, iws * I, -I);
}

CMat dense_R2(double nu, Index m) {
  const double sn = std::sqrt(nu);
  const CMat Z = CMat::Zero(m, m);
  const CMat I = CMat::Identity(m, m);
  return block2(Z, sn * I, sn * I, Z);
}

Mat dense_G(double nu, double omega, Index m) {
  const double f = 1.0 / std::sqrt(nu * (1.0 + nu * omega * omega));
  const double wn = omega * nu;
  const double sn = std::sqrt(nu);
  Mat out = Mat::Zero(4 * m, 4 * m);
  const Mat I = Mat::Identity(m, m);
  auto blk = [&](int i, int j) { return out.block(i * m, j * m, m, m); };
  blk(0, 1) = f * wn * I;
  blk(0, 2) = f * sn * I;
  blk(1, 0) = -f * wn * I;
  blk(1, 3) = f * sn * I;
  blk(2, 0) = -f * sn * I;
  blk(2, 3) = -f * wn * I;
  blk(3, 1) = -f * sn * I;
  blk(3, 2) = f * wn * I;
  return out;
}

DenseSplitting build_splitting_dense(const Mat& M, const Mat& K, double nu,
                                     double omega, double alpha) {
  require(M.rows() == M.cols() && K.rows() == K.cols() && M.rows() == K.rows(),
          "build_splitting_dense: M and K must be square of equal order");
  if (M.rows() > kMaxOrder)
    throw SizeError("build_splitting_dense: order exceeds the dense cap of 225");
  if (!(alpha > 0)) throw ParameterError("build_splitting_dense: alpha must be positive");

  const Index m = M.rows();
  const double th = 1.0 + nu * omega * omega;
  const double snt = std::sqrt(nu * th);

  CMat H1 = CMat::Zero(2 * m, 2 * m), H2 = CMat::Zero(2 * m, 2 * m);
  H1.topLeftCorner(m, m) = M.cast<Complex>();
  H1.bottomRightCorner(m, m) = M.cast<Complex>();
  H2.topLeftCorner(m, m) = K.cast<Complex>();
  H2.bottomRightCorner(m, m) = K.cast<Complex>();

  const CMat R = dense_R(nu, omega, m);
  const CMat I = CMat::Identity(2 * m, 2 * m);
  const CMat IpR_inv = (I + R).partialPivLu().inverse();

  DenseSplitting out;
  out.B = (1.0 / alpha) * IpR_inv * (alpha * I + th * H1) * R * (alpha * I + snt * H2);
  out.C = (1.0 / alpha) * IpR_inv * (alpha * R - th * H1) * (alpha * I - snt * R * H2);
  out.Atilde = out.B - out.C;
  return out;
}

DenseSplitting build_splitting_dense(const SystemBundle& s, double alpha) {
  if (s.m() > kMaxOrder)
    throw SizeError("build_splitting_dense: grid too fine for the dense oracle (m > 225)");
  return build_splitting_dense(to_dense(s.M), to_dense(s.K), s.params.nu,
                               s.params.omega, alpha);
}

double spectral_radius(const CMat& T) {
  require(T.rows() == T.cols(), "spectral_radius: matrix must be square");
  if (T.rows() > 2 * kMaxOrder)
    throw SizeError("spectral_radius: order exceeds the dense cap of 450");
  Eigen::ComplexEigenSolver<CMat> es(T, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw EigenSolveError("spectral_radius: dense eigensolver did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const Mat& T) { return spectral_radius(CMat(T.cast<Complex>())); }

}  // namespace dense
}  // namespace mbas

#pragma once

// Floating-point model of the quadric M = {(z, w) : z, w != 0, sum z_j w_j = 0}
// in C^6, the SU(3) embedding, the moment map of the 2-torus action, level-set
// sampling and pointwise certification of the induced transverse structure.
//
// Real coordinates on C^6 are interleaved: index 2k is Re u_k and 2k+1 is
// Im u_k for u = (z_1, z_2, z_3, w_1, w_2, w_3). The ambient complex structure
// J is multiplication by i and the Kähler form is
//   omega(u, v) = sum_k Im(u_k * conj(v_k)),
// so omega(J u, u) = |u|^2.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "twistflag/weight_system.hpp"

namespace twistflag {

using cdouble = std::complex<double>;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;
using Vec6c = Eigen::Matrix<cdouble, 6, 1>;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Mat2 = Eigen::Matrix2d;

class ConvergenceFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A point of C^3 x C^3 (not necessarily on any level set).
struct AmbientPoint {
  Vec3c z = Vec3c::Zero();
  Vec3c w = Vec3c::Zero();

  Vec6c stacked() const;
  Vec12 real() const;
  static AmbientPoint from_real(const Vec12 &x);
};

/// A point on a level set together with its residuals.
struct LevelSetPoint {
  AmbientPoint p;
  double quadric_residual = 0; ///< |sum z_j w_j|
  double moment_residual = 0;  ///< |Phi(z, w) - C|
};

/// Float copy of cone data.
struct ConeDataF {
  std::array<Eigen::Vector2d, 3> A;
  std::array<Eigen::Vector2d, 3> B;
  Eigen::Vector2d C;

  static ConeDataF from(const DerivedConeData &d);
  /// A_j = (1,0), B_j = (0,1), C = (1,1): the level set is SU(3) itself.
  static ConeDataF unit_su3();
};

/// Minimum of max|z_k| and max|w_k| allowed on the quadric.
inline constexpr double kNonzeroThreshold = 1e-8;

struct SpecialUnitaryMatrix {
  Mat3c m;
  /// Throws InvalidInput if ||m^* m - I|| or |det m - 1| exceeds tol.
  void validate(double tol = 1e-12) const;
};

SpecialUnitaryMatrix random_su3(std::uint64_t seed);

/// z = first column of A, w = third column of (A^T)^{-1}. The residuals are
/// those of the unit data (sum |z|^2 = sum |w|^2 = 1).
LevelSetPoint embed_su3(const SpecialUnitaryMatrix &a, double tol = 1e-12);

Eigen::Vector2d moment_map(const ConeDataF &d, const AmbientPoint &p);
Eigen::Vector2d moment_map(const DerivedConeData &d, const AmbientPoint &p);

/// Recomputes both residuals against the data; throws InvalidInput when z or w vanishes.
LevelSetPoint evaluate_point(const ConeDataF &d, const AmbientPoint &p);

/// z = sqrt(a) e_i, w = sqrt(b) e_j for the positive witness C = a A_i + b B_j.
/// Indices are 0-based; throws PreconditionFailed for i == j or no witness.
LevelSetPoint sample_level_point(const DerivedConeData &d, int i, int j);

struct ProjectionResult {
  LevelSetPoint point;
  int iterations = 0;
};

/// Gauss-Newton (minimum-norm steps) on F = (Re sum z w, Im sum z w, Phi - C).
/// Throws ConvergenceFailure after max_iter, InvalidInput when z or w is ~0.
ProjectionResult project_to_level(const ConeDataF &d, const AmbientPoint &p0, double tol = 1e-12,
                                  int max_iter = 50);

/// z_j -> t^{A_j} z_j, w_j -> t^{B_j} w_j with t = (e^{i theta_1}, e^{i theta_2}).
LevelSetPoint action_orbit_map(const ConeDataF &d, const LevelSetPoint &p, const Eigen::Vector2d &theta);

/// || embed(g A h^{-1}) - (g_k h_1^{-1} z_k, g_k^{-1} h_3 w_k) || for diagonal
/// unit-modulus g, h of determinant one.
double equivariance_check(const SpecialUnitaryMatrix &a, const Vec3c &g, const Vec3c &h);

struct TransverseFrame {
  Vec6c X; ///< rotation field of the first (transformed) moment component
  Vec6c Y; ///< rotation field of the second
  Vec6c Z; ///< X - J Y
  Vec6c W; ///< J X + Y
};

/// (f', g') = (f, g) * bc and the matching combination of rotation fields.
/// X has z_j component i * <A_j, bc column 1> * z_j, and so on.
TransverseFrame transverse_frame(const ConeDataF &d, const AmbientPoint &p, const Mat2 &bc = Mat2::Identity());

/// df(v) for the first transformed moment component, used to pin the
/// normalization of the rotation fields: omega(X, .) = df / 2.
double moment_differential(const ConeDataF &d, const AmbientPoint &p, const Mat2 &bc, int component,
                           const Vec6c &v);

/// omega(u, v) = sum_k Im(u_k conj(v_k)).
double kahler_form(const Vec6c &u, const Vec6c &v);

/// 4 x 12 real Jacobian of (Re sum z w, Im sum z w, Phi_1, Phi_2).
Eigen::Matrix<double, 4, 12> constraint_jacobian(const ConeDataF &d, const AmbientPoint &p);

struct CertificateTolerances {
  double rank_rel = 1e-9;   ///< singular values below rank_rel * sigma_max count as zero
  double operator_err = 1e-8;
  double tol_zero = 1e-8;   ///< |lambda| below this is a kernel eigenvalue
  double tol_pos_rel = 1e-6; ///< positive eigenvalues must exceed tol_pos_rel * lambda_max
  double residual = 1e-8;   ///< level-set membership
  double min_projection_sigma = 1e-10; ///< conditioning floor for the splitting T_pM = T_pN + span{Z, W}
};

struct PointCertificate {
  LevelSetPoint point;
  int jacobian_rank = 0;
  int transversal_rank = 0;
  bool regular = false;
  bool transversal = false;
  double projection_sigma_min = 0; ///< smallest singular value of [T_pN basis | Z | W]
  double jn_square_error = 0;      ///< || J_N^2 + I ||
  double jn_xy_error = 0;          ///< || J_N X + Y || + || J_N Y - X ||
  double jn_xy_opposite_error = 0; ///< the same with the opposite sign; ~2 at every point
  double omega_compat_error = 0;   ///< || omega(J_N., J_N.) - omega ||
  std::array<double, 8> spectrum{}; ///< symmetric part of omega(J_N u, v), ascending
  int zero_eigenvalues = 0;
  int positive_eigenvalues = 0;
  bool pass = false;
  std::string failure; ///< empty when pass
};

PointCertificate certify_point(const ConeDataF &d, const LevelSetPoint &p, const Mat2 &bc = Mat2::Identity(),
                               const CertificateTolerances &tol = {});

struct SampleOptions {
  int count = 100;
  std::uint64_t seed = 0;
  double noise = 1e-2;
  double tol = 1e-12;
  int max_iter = 50;
};

struct SampledPoint {
  std::optional<LevelSetPoint> point;
  std::string origin; ///< "witness i,j", "projected", "su3"
  int iterations = 0;
  std::string error;  ///< set when projection failed
};

/// Positive-witness points first, then (when A_j and B_j are each constant and
/// independent) rescaled random SU(3) embeddings, then Gauss-Newton projections
/// of Gaussian perturbations of previously accepted samples.
std::vector<SampledPoint> sample_level_set(const DerivedConeData &d, const SampleOptions &opt);

/// Certifies each sampled point; work is split across threads, order preserved.
std::vector<PointCertificate> certify_batch(const ConeDataF &d, const std::vector<LevelSetPoint> &points,
                                            const Mat2 &bc, const CertificateTolerances &tol,
                                            unsigned threads = 0);

struct BoundednessCheck {
  double identity_residual = 0; ///< |sum alpha(A_j)|z_j|^2 + alpha(B_j)|w_j|^2 - alpha(C)|
  double norm_bound = 0;        ///< alpha(C) / min alpha(generator)
  double z_norm2 = 0;
  double w_norm2 = 0;
  bool holds(double tol = 1e-10) const {
    return identity_residual <= tol && z_norm2 <= norm_bound + tol && w_norm2 <= norm_bound + tol;
  }
};

BoundednessCheck boundedness_witness(const DerivedConeData &d, const Rat2 &alpha, const AmbientPoint &p);

} // namespace twistflag

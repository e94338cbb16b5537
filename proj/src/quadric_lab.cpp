#include "twistflag/quadric_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace twistflag {

namespace {

const cdouble kI(0.0, 1.0);

Eigen::Vector2d to_vec(const Rat2 &v) { return {to_double(v.x), to_double(v.y)}; }

Vec12 to_real(const Vec6c &u) {
  Vec12 x;
  for (int k = 0; k < 6; ++k) {
    x(2 * k) = u(k).real();
    x(2 * k + 1) = u(k).imag();
  }
  return x;
}

Vec6c to_complex(const Vec12 &x) {
  Vec6c u;
  for (int k = 0; k < 6; ++k) u(k) = cdouble(x(2 * k), x(2 * k + 1));
  return u;
}

// Multiplication by i in interleaved real coordinates.
Vec12 apply_j(const Vec12 &x) {
  Vec12 y;
  for (int k = 0; k < 6; ++k) {
    y(2 * k) = -x(2 * k + 1);
    y(2 * k + 1) = x(2 * k);
  }
  return y;
}

// Matrix of omega in interleaved real coordinates: omega(u, v) = u^T Omega v.
Eigen::Matrix<double, 12, 12> omega_matrix() {
  Eigen::Matrix<double, 12, 12> m = Eigen::Matrix<double, 12, 12>::Zero();
  for (int k = 0; k < 6; ++k) {
    m(2 * k, 2 * k + 1) = -1.0;
    m(2 * k + 1, 2 * k) = 1.0;
  }
  return m;
}

bool nonzero_parts(const AmbientPoint &p) {
  return p.z.cwiseAbs().maxCoeff() > kNonzeroThreshold && p.w.cwiseAbs().maxCoeff() > kNonzeroThreshold;
}

Eigen::Vector4d level_residual(const ConeDataF &d, const AmbientPoint &p) {
  const cdouble s = (p.z.array() * p.w.array()).sum();
  const Eigen::Vector2d phi = moment_map(d, p) - d.C;
  return {s.real(), s.imag(), phi(0), phi(1)};
}

} // namespace

Vec6c AmbientPoint::stacked() const {
  Vec6c u;
  u << z, w;
  return u;
}

Vec12 AmbientPoint::real() const { return to_real(stacked()); }

AmbientPoint AmbientPoint::from_real(const Vec12 &x) {
  Vec6c u = to_complex(x);
  return {u.head<3>(), u.tail<3>()};
}

ConeDataF ConeDataF::from(const DerivedConeData &d) {
  ConeDataF f;
  for (int j = 0; j < 3; ++j) {
    f.A[j] = to_vec(d.A[j]);
    f.B[j] = to_vec(d.B[j]);
  }
  f.C = to_vec(d.C);
  return f;
}

ConeDataF ConeDataF::unit_su3() {
  ConeDataF f;
  for (int j = 0; j < 3; ++j) {
    f.A[j] = {1.0, 0.0};
    f.B[j] = {0.0, 1.0};
  }
  f.C = {1.0, 1.0};
  return f;
}

void SpecialUnitaryMatrix::validate(double tol) const {
  const double unitarity = (m.adjoint() * m - Mat3c::Identity()).norm();
  const double det = std::abs(m.determinant() - 1.0);
  if (!(unitarity <= tol) || !(det <= tol)) {
    std::ostringstream os;
    os << "matrix is not special unitary: ||A*A - I|| = " << unitarity << ", |det A - 1| = " << det;
    throw InvalidInput(os.str());
  }
}

SpecialUnitaryMatrix random_su3(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Mat3c g;
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) g(r, c) = cdouble(normal(rng), normal(rng));

  // Modified Gram-Schmidt, two passes.
  Mat3c q = g;
  for (int c = 0; c < 3; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < c; ++k) q.col(c) -= q.col(k).dot(q.col(c)) * q.col(k);
    }
    const double n = q.col(c).norm();
    if (n < 1e-12) throw std::runtime_error("random_su3: singular Gaussian draw");
    q.col(c) /= n;
  }
  const cdouble det = q.determinant();
  q.col(2) *= std::conj(det) / std::abs(det);
  SpecialUnitaryMatrix out{q};
  out.validate(1e-12);
  return out;
}

LevelSetPoint embed_su3(const SpecialUnitaryMatrix &a, double tol) {
  a.validate(tol);
  AmbientPoint p;
  p.z = a.m.col(0);
  p.w = a.m.transpose().inverse().col(2);
  return evaluate_point(ConeDataF::unit_su3(), p);
}

Eigen::Vector2d moment_map(const ConeDataF &d, const AmbientPoint &p) {
  Eigen::Vector2d phi = Eigen::Vector2d::Zero();
  for (int j = 0; j < 3; ++j) phi += d.A[j] * std::norm(p.z(j)) + d.B[j] * std::norm(p.w(j));
  return phi;
}

Eigen::Vector2d moment_map(const DerivedConeData &d, const AmbientPoint &p) {
  return moment_map(ConeDataF::from(d), p);
}

LevelSetPoint evaluate_point(const ConeDataF &d, const AmbientPoint &p) {
  if (!nonzero_parts(p)) throw InvalidInput("point has z = 0 or w = 0; not on the quadric");
  const Eigen::Vector4d r = level_residual(d, p);
  return {p, r.head<2>().norm(), r.tail<2>().norm()};
}

LevelSetPoint sample_level_point(const DerivedConeData &d, int i, int j) {
  if (i < 0 || i > 2 || j < 0 || j > 2) throw InvalidInput("index out of range");
  if (i == j) throw PreconditionFailed("sample_level_point needs i != j");
  auto ab = positive_combination(d.C, d.A[i], d.B[j]);
  if (!ab) throw PreconditionFailed("C has no positive combination of A_i and B_j");
  AmbientPoint p;
  p.z(i) = std::sqrt(to_double(ab->first));
  p.w(j) = std::sqrt(to_double(ab->second));
  return evaluate_point(ConeDataF::from(d), p);
}

Eigen::Matrix<double, 4, 12> constraint_jacobian(const ConeDataF &d, const AmbientPoint &p) {
  Eigen::Matrix<double, 4, 12> jac = Eigen::Matrix<double, 4, 12>::Zero();
  for (int k = 0; k < 3; ++k) {
    const int zr = 2 * k, zi = 2 * k + 1, wr = 6 + 2 * k, wi = 6 + 2 * k + 1;
    // s = sum z w: ds/dRe z = w, ds/dIm z = i w, and symmetrically for w.
    const cdouble dz_re = p.w(k), dz_im = kI * p.w(k);
    const cdouble dw_re = p.z(k), dw_im = kI * p.z(k);
    jac(0, zr) = dz_re.real();
    jac(1, zr) = dz_re.imag();
    jac(0, zi) = dz_im.real();
    jac(1, zi) = dz_im.imag();
    jac(0, wr) = dw_re.real();
    jac(1, wr) = dw_re.imag();
    jac(0, wi) = dw_im.real();
    jac(1, wi) = dw_im.imag();
    // Phi = sum A |z|^2 + B |w|^2.
    jac.block<2, 1>(2, zr) = 2.0 * p.z(k).real() * d.A[k];
    jac.block<2, 1>(2, zi) = 2.0 * p.z(k).imag() * d.A[k];
    jac.block<2, 1>(2, wr) = 2.0 * p.w(k).real() * d.B[k];
    jac.block<2, 1>(2, wi) = 2.0 * p.w(k).imag() * d.B[k];
  }
  return jac;
}

ProjectionResult project_to_level(const ConeDataF &d, const AmbientPoint &p0, double tol, int max_iter) {
  if (!nonzero_parts(p0)) throw InvalidInput("projection start has z = 0 or w = 0");
  AmbientPoint p = p0;
  for (int it = 0; it <= max_iter; ++it) {
    const Eigen::Vector4d f = level_residual(d, p);
    if (f.norm() <= tol) return {evaluate_point(d, p), it};
    if (it == max_iter) break;
    const Eigen::Matrix<double, 4, 12> jac = constraint_jacobian(d, p);
    const Vec12 step = jac.completeOrthogonalDecomposition().solve(f);
    p = AmbientPoint::from_real(p.real() - step);
    if (!nonzero_parts(p)) throw ConvergenceFailure("projection collapsed z or w toward 0");
  }
  std::ostringstream os;
  os << "Gauss-Newton did not reach |F| <= " << tol << " in " << max_iter << " iterations";
  throw ConvergenceFailure(os.str());
}

LevelSetPoint action_orbit_map(const ConeDataF &d, const LevelSetPoint &p, const Eigen::Vector2d &theta) {
  AmbientPoint q = p.p;
  for (int j = 0; j < 3; ++j) {
    q.z(j) *= std::exp(kI * theta.dot(d.A[j]));
    q.w(j) *= std::exp(kI * theta.dot(d.B[j]));
  }
  return evaluate_point(d, q);
}

double equivariance_check(const SpecialUnitaryMatrix &a, const Vec3c &g, const Vec3c &h) {
  auto check_torus = [](const Vec3c &t) {
    const bool unit = (t.cwiseAbs() - Eigen::Vector3d::Ones()).cwiseAbs().maxCoeff() <= 1e-12;
    if (!unit || std::abs(t.prod() - 1.0) > 1e-12) {
      throw InvalidInput("torus element must be unit-modulus diagonal with determinant 1");
    }
  };
  check_torus(g);
  check_torus(h);
  SpecialUnitaryMatrix moved{g.asDiagonal() * a.m * h.conjugate().asDiagonal()};
  const AmbientPoint lhs = embed_su3(moved, 1e-10).p;
  const AmbientPoint base = embed_su3(a, 1e-10).p;
  AmbientPoint rhs;
  for (int k = 0; k < 3; ++k) {
    rhs.z(k) = g(k) * std::conj(h(0)) * base.z(k);
    rhs.w(k) = std::conj(g(k)) * h(2) * base.w(k);
  }
  return (lhs.stacked() - rhs.stacked()).norm();
}

TransverseFrame transverse_frame(const ConeDataF &d, const AmbientPoint &p, const Mat2 &bc) {
  TransverseFrame f;
  for (int j = 0; j < 3; ++j) {
    const double ax = d.A[j].dot(bc.col(0)), ay = d.A[j].dot(bc.col(1));
    const double bx = d.B[j].dot(bc.col(0)), by = d.B[j].dot(bc.col(1));
    f.X(j) = kI * ax * p.z(j);
    f.X(3 + j) = kI * bx * p.w(j);
    f.Y(j) = kI * ay * p.z(j);
    f.Y(3 + j) = kI * by * p.w(j);
  }
  f.Z = f.X - kI * f.Y;
  f.W = kI * f.X + f.Y;
  return f;
}

double moment_differential(const ConeDataF &d, const AmbientPoint &p, const Mat2 &bc, int component,
                           const Vec6c &v) {
  double df = 0;
  for (int j = 0; j < 3; ++j) {
    const double a = d.A[j].dot(bc.col(component));
    const double b = d.B[j].dot(bc.col(component));
    df += 2.0 * a * (std::conj(p.z(j)) * v(j)).real();
    df += 2.0 * b * (std::conj(p.w(j)) * v(3 + j)).real();
  }
  return df;
}

double kahler_form(const Vec6c &u, const Vec6c &v) {
  double s = 0;
  for (int k = 0; k < 6; ++k) s += (u(k) * std::conj(v(k))).imag();
  return s;
}

PointCertificate certify_point(const ConeDataF &d, const LevelSetPoint &lp, const Mat2 &bc,
                               const CertificateTolerances &tol) {
  PointCertificate cert;
  cert.point = evaluate_point(d, lp.p);
  const AmbientPoint &p = cert.point.p;
  auto fail = [&](std::string why) {
    cert.pass = false;
    cert.failure = std::move(why);
    return cert;
  };
  if (std::abs(bc.determinant()) == 0.0) throw InvalidInput("frame basis change must be invertible");

  // (a) regularity
  const Eigen::Matrix<double, 4, 12> jac = constraint_jacobian(d, p);
  Eigen::JacobiSVD<Eigen::MatrixXd> jsvd(jac, Eigen::ComputeFullV);
  const auto &sv = jsvd.singularValues();
  cert.jacobian_rank = 0;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol.rank_rel * sv(0)) ++cert.jacobian_rank;
  }
  cert.regular = cert.jacobian_rank == 4;
  if (cert.point.quadric_residual > tol.residual || cert.point.moment_residual > tol.residual) {
    return fail("point is not on the level set");
  }
  if (!cert.regular) return fail("constraint Jacobian is rank deficient");

  // (b) orthonormal basis of T_pN
  const Eigen::Matrix<double, 12, 8> basis = jsvd.matrixV().rightCols(8);

  // (c) transversality of span{Z, W}
  const TransverseFrame frame = transverse_frame(d, p, bc);
  Eigen::Matrix<double, 12, 10> split;
  split << basis, to_real(frame.Z), to_real(frame.W);
  Eigen::JacobiSVD<Eigen::MatrixXd> ssvd(split);
  const auto &ssv = ssvd.singularValues();
  cert.transversal_rank = 0;
  for (int k = 0; k < ssv.size(); ++k) {
    if (ssv(k) > tol.rank_rel * ssv(0)) ++cert.transversal_rank;
  }
  cert.transversal = cert.transversal_rank == 10;
  cert.projection_sigma_min = ssv(ssv.size() - 1) / ssv(0);
  if (!cert.transversal) return fail("span{Z, W} is not transverse to T_pN");
  if (cert.projection_sigma_min < tol.min_projection_sigma) return fail("near-singular projection along span{Z, W}");

  // (d) J_N: project J v back to T_pN along span{Z, W}
  const auto qr = split.colPivHouseholderQr();
  Eigen::Matrix<double, 8, 8> jn;
  for (int k = 0; k < 8; ++k) {
    const Eigen::Matrix<double, 10, 1> c = qr.solve(apply_j(basis.col(k)));
    jn.col(k) = c.head<8>();
  }

  // (e) operator identities
  cert.jn_square_error = (jn * jn + Eigen::Matrix<double, 8, 8>::Identity()).norm();
  const Eigen::Matrix<double, 8, 1> x = basis.transpose() * to_real(frame.X);
  const Eigen::Matrix<double, 8, 1> y = basis.transpose() * to_real(frame.Y);
  const double scale = std::max(1.0, x.norm() + y.norm());
  // JX = W - Y with W in the projection kernel, so J_N X = -Y and J_N Y = X.
  cert.jn_xy_error = ((jn * x + y).norm() + (jn * y - x).norm()) / scale;
  cert.jn_xy_opposite_error = ((jn * x - y).norm() + (jn * y + x).norm()) / scale;
  const Eigen::Matrix<double, 8, 8> omega_n = basis.transpose() * omega_matrix() * basis;
  cert.omega_compat_error = (jn.transpose() * omega_n * jn - omega_n).norm();

  // (f) positivity of omega(J_N u, v)
  const Eigen::Matrix<double, 8, 8> q = jn.transpose() * omega_n;
  const Eigen::Matrix<double, 8, 8> sym = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 8, 8>> eig(sym, Eigen::EigenvaluesOnly);
  const auto &ev = eig.eigenvalues();
  const double lmax = ev(7);
  for (int k = 0; k < 8; ++k) {
    cert.spectrum[k] = ev(k);
    if (std::abs(ev(k)) <= tol.tol_zero) ++cert.zero_eigenvalues;
    else if (ev(k) >= tol.tol_pos_rel * lmax) ++cert.positive_eigenvalues;
  }

  if (cert.jn_square_error > tol.operator_err) return fail("J_N^2 != -I");
  if (cert.jn_xy_error > tol.operator_err) return fail("J_N X != -Y");
  if (cert.omega_compat_error > tol.operator_err) return fail("omega is not J_N-invariant");
  if (cert.zero_eigenvalues != 2 || cert.positive_eigenvalues != 6) {
    return fail("positivity spectrum is not (2 zero, 6 positive)");
  }
  cert.pass = true;
  return cert;
}

std::vector<SampledPoint> sample_level_set(const DerivedConeData &d, const SampleOptions &opt) {
  if (opt.count < 1) throw InvalidInput("sample count must be at least 1");
  const ConeDataF df = ConeDataF::from(d);
  std::vector<SampledPoint> out;
  std::vector<LevelSetPoint> pool;
  auto full = [&] { return static_cast<int>(out.size()) >= opt.count; };

  for (int i = 0; i < 3 && !full(); ++i) {
    for (int j = 0; j < 3 && !full(); ++j) {
      if (i == j || !positive_combination(d.C, d.A[i], d.B[j])) continue;
      LevelSetPoint lp = sample_level_point(d, i, j);
      pool.push_back(lp);
      out.push_back({lp, "witness " + std::to_string(i + 1) + "," + std::to_string(j + 1), 0, {}});
    }
  }

  // Constant A_j, B_j: the level set is a rescaled copy of SU(3).
  const bool constant = d.A[0] == d.A[1] && d.A[1] == d.A[2] && d.B[0] == d.B[1] && d.B[1] == d.B[2];
  if (constant && cross(d.A[0], d.B[0]) != 0) {
    ConeMembership m = in_cone2(d.C, d.A[0], d.B[0]);
    if (m.strictly_positive()) {
      const double sa = std::sqrt(to_double(m.coefficients->first));
      const double sb = std::sqrt(to_double(m.coefficients->second));
      const int budget = opt.count / 4;
      for (int k = 0; k < budget && !full(); ++k) {
        AmbientPoint p = embed_su3(random_su3(opt.seed * 1000003ULL + static_cast<std::uint64_t>(k))).p;
        p.z *= sa;
        p.w *= sb;
        LevelSetPoint lp = evaluate_point(df, p);
        pool.push_back(lp);
        out.push_back({lp, "su3", 0, {}});
      }
    }
  }
  if (pool.empty()) throw PreconditionFailed("no seed point on the level set (no positive witness)");

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  while (!full()) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const LevelSetPoint &base = pool[pick(rng)];
    Vec12 noise;
    for (int k = 0; k < 12; ++k) noise(k) = normal(rng);
    noise *= opt.noise / noise.norm();
    SampledPoint sp;
    sp.origin = "projected";
    try {
      ProjectionResult r = project_to_level(df, AmbientPoint::from_real(base.p.real() + noise), opt.tol,
                                            opt.max_iter);
      sp.point = r.point;
      sp.iterations = r.iterations;
      pool.push_back(r.point);
    } catch (const std::exception &e) {
      sp.error = e.what();
    }
    out.push_back(std::move(sp));
  }
  return out;
}

std::vector<PointCertificate> certify_batch(const ConeDataF &d, const std::vector<LevelSetPoint> &points,
                                            const Mat2 &bc, const CertificateTolerances &tol,
                                            unsigned threads) {
  std::vector<PointCertificate> out(points.size());
  if (points.empty()) return out;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  auto work = [&](unsigned part) {
    const std::size_t lo = points.size() * part / threads;
    const std::size_t hi = points.size() * (part + 1) / threads;
    for (std::size_t k = lo; k < hi; ++k) out[k] = certify_point(d, points[k], bc, tol);
  };
  std::vector<std::thread> pool;
  for (unsigned p = 1; p < threads; ++p) pool.emplace_back(work, p);
  work(0);
  for (auto &t : pool) t.join();
  return out;
}

BoundednessCheck boundedness_witness(const DerivedConeData &d, const Rat2 &alpha, const AmbientPoint &p) {
  BoundednessCheck b;
  double lhs = 0;
  Rational min_alpha = apply(alpha, d.A[0]);
  for (int j = 0; j < 3; ++j) {
    const Rational aa = apply(alpha, d.A[j]);
    const Rational ab = apply(alpha, d.B[j]);
    if (aa <= 0 || ab <= 0) throw PreconditionFailed("alpha is not positive on every generator");
    min_alpha = std::min({min_alpha, aa, ab});
    lhs += to_double(aa) * std::norm(p.z(j)) + to_double(ab) * std::norm(p.w(j));
  }
  const double ac = to_double(apply(alpha, d.C));
  b.identity_residual = std::abs(lhs - ac);
  b.norm_bound = ac / to_double(min_alpha);
  b.z_norm2 = p.z.squaredNorm();
  b.w_norm2 = p.w.squaredNorm();
  return b;
}

} // namespace twistflag

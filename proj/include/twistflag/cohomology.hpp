#pragma once

// Finite-dimensional (bi)graded algebras with exact structure constants,
// exterior extensions by odd generators with a differential, and their
// cohomology tables.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twistflag/exact_geometry.hpp"

namespace twistflag {

/// Element re + im*sqrt(-3) of the quadratic field Q(sqrt(-3)).
struct QSqrtNeg3 {
  Rational re{0};
  Rational im{0};

  QSqrtNeg3() = default;
  QSqrtNeg3(Rational r) : re(std::move(r)) {} // NOLINT(google-explicit-constructor)
  QSqrtNeg3(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  friend bool operator==(const QSqrtNeg3 &a, const QSqrtNeg3 &b) { return a.re == b.re && a.im == b.im; }
  friend QSqrtNeg3 operator+(const QSqrtNeg3 &a, const QSqrtNeg3 &b) { return {a.re + b.re, a.im + b.im}; }
  friend QSqrtNeg3 operator-(const QSqrtNeg3 &a, const QSqrtNeg3 &b) { return {a.re - b.re, a.im - b.im}; }
  friend QSqrtNeg3 operator-(const QSqrtNeg3 &a) { return {-a.re, -a.im}; }
  friend QSqrtNeg3 operator*(const QSqrtNeg3 &a, const QSqrtNeg3 &b) {
    return {a.re * b.re - 3 * a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend QSqrtNeg3 operator/(const QSqrtNeg3 &a, const QSqrtNeg3 &b);
};

std::string to_string(const QSqrtNeg3 &x);

/// Graded-commutative algebra on a finite basis; element 0 is the unit.
/// mult[i][j] holds the coordinates of basis_i * basis_j.
struct GradedAlgebra {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> bidegree; ///< (p, q); total degree p + q
  std::vector<std::vector<std::vector<Rational>>> mult;

  std::size_t size() const { return labels.size(); }
  int degree(std::size_t i) const { return bidegree[i].first + bidegree[i].second; }
  int top_degree() const;
  std::vector<int> graded_dimensions() const; ///< by total degree, 0..top
  std::vector<Rational> multiply(const std::vector<Rational> &a, const std::vector<Rational> &b) const;
  std::vector<Rational> basis_vector(std::size_t i) const;

  /// Exhaustive checks over basis pairs/triples; return an empty string or a description.
  std::string check_associativity() const;
  std::string check_graded_commutativity() const;
  std::string check_unit() const;
};

/// Q[x1,x2,x3]/(e1,e2,e3) with deg x_i = 2, basis x1^a x2^b (a <= 2, b <= 1).
/// `hodge` places x_i in bidegree (1,1) instead of (2,0).
GradedAlgebra basic_model(bool hodge = false);

/// x1 - x3 in the basis of basic_model.
std::vector<Rational> lefschetz_class();

/// Degree-2 basis elements of basic_model (x1, x2), as coordinate vectors.
std::array<std::vector<Rational>, 2> degree_two_basis();

/// base (x) exterior(generators), differential given on generators.
template <class F>
struct DgaModel {
  GradedAlgebra base;
  std::vector<std::pair<int, int>> generator_bidegree; ///< odd total degree
  std::vector<std::vector<F>> d_generator;             ///< d(g) in base coordinates
  std::pair<int, int> d_bidegree{1, 0};                 ///< bidegree of the differential
};

using RationalDga = DgaModel<Rational>;
using HodgeDga = DgaModel<QSqrtNeg3>;

/// h^{p,q} of the model; throws InvalidInput when d^2 != 0 or d is not homogeneous.
template <class F>
std::map<std::pair<int, int>, int> bigraded_cohomology(const DgaModel<F> &m);

/// Exhaustive d^2 = 0 and Leibniz-rule checks; empty string when both hold.
template <class F>
std::string check_dga(const DgaModel<F> &m);

/// Euler characteristic of the underlying graded vector space.
template <class F>
int euler_characteristic(const DgaModel<F> &m);

/// Betti numbers by total degree (single grading, d of degree +1).
std::vector<int> dga_cohomology(const RationalDga &m);

/// basic_model (x) Lambda(w1, w2) with deg w = 1, d w_k = dw[k].
RationalDga derham_model(const std::vector<Rational> &dw1, const std::vector<Rational> &dw2);

/// Coordinates of beta = b1*x1 + b2*x2 in H^{1,1}.
using Beta = std::array<QSqrtNeg3, 2>;

/// Determinant of multiplication by beta, H^{1,1} -> H^{2,2}.
QSqrtNeg3 beta_multiplication_determinant(const Beta &beta);
/// A beta with invertible multiplication (x1).
Beta generic_beta();
/// A beta on the degeneracy locus: ((1 + sqrt(-3))/2, 1).
Beta degenerate_beta();

/// basic_model(hodge) (x) Lambda(w, wbar), dbar w = beta, dbar wbar = 0.
HodgeDga hodge_dga(const Beta &beta);

struct HodgeTable {
  std::map<std::pair<int, int>, int> h; ///< 0 <= p, q <= 4
  std::array<int, 3> branch{};          ///< (h^{2,1}, h^{2,2}, h^{2,3})
};

/// Computes all h^{p,q}; throws InvalidInput for beta = 0 and
/// InternalInconsistency if a fixed diamond entry or the branch
/// set is violated.
HodgeTable hodge_model(const Beta &beta);

/// The fixed (non-branch) entries of the diamond.
const std::map<std::pair<int, int>, int> &fixed_hodge_entries();

} // namespace twistflag

#pragma once

// Weight systems for a double-sided 2-torus action on SU(3), the cone data
// they induce, and the exact cone conditions on that data.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "twistflag/exact_geometry.hpp"

namespace twistflag {

using Int2 = std::array<std::int64_t, 2>;

/// Exponent vectors of rho_L(t) = diag(t^{wL_j}) and rho_R(t) = diag(t^{wR_j}).
/// Each triple sums to zero.
struct WeightSystem {
  std::array<Int2, 3> wL{};
  std::array<Int2, 3> wR{};

  /// Throws InvalidInput unless both triples sum to zero.
  void validate() const;
  bool left_trivial() const;

  friend bool operator==(const WeightSystem &, const WeightSystem &) = default;
  friend auto operator<=>(const WeightSystem &, const WeightSystem &) = default;
};

/// Same shape over the rationals, as produced when solving back from cone data.
struct RationalWeightSystem {
  std::array<Rat2, 3> wL;
  std::array<Rat2, 3> wR;
};

/// A_j = wL_j - wR_1, B_j = -wL_j + wR_3, C = -wR_1 + wR_3.
struct DerivedConeData {
  std::array<Rat2, 3> A;
  std::array<Rat2, 3> B;
  Rat2 C;

  /// Throws InvalidInput unless A_j + B_j == C for every j.
  void validate() const;
  bool is_integral() const;
  /// Builds data from A and B alone; C := A_1 + B_1 (validated).
  static DerivedConeData from_AB(const std::array<Rat2, 3> &A, const std::array<Rat2, 3> &B);
};

DerivedConeData derive(const WeightSystem &ws);

/// One cone query recorded in a condition report; indices are 0-based.
struct PairCheck {
  int i = 0;
  int j = 0;
  ConeMembership membership;
};

struct NonemptyWitness {
  int i = 0;
  int j = 0;
  Rational a;
  Rational b;
};

struct NrcResult {
  bool n = false;
  std::optional<NonemptyWitness> n_witness;
  bool r = false;
  bool c = false;
  std::optional<Rat2> apex; ///< covector alpha, present whenever the six generators have an apex
};

struct ConditionReport {
  bool star = false;
  std::vector<PairCheck> a_pairs;     ///< C vs cone(A_i, A_j), 9 ordered pairs
  std::vector<PairCheck> b_pairs;     ///< C vs cone(B_i, B_j)
  std::vector<PairCheck> mixed_pairs; ///< C vs cone(A_i, B_j)
  NrcResult nrc;
};

ConditionReport check_star(const DerivedConeData &d);
/// Only the boolean of check_star, without building the report.
bool star_holds(const DerivedConeData &d);
NrcResult check_nrc(const DerivedConeData &d);

struct GeneratedWeights {
  RationalWeightSystem rational;
  std::int64_t scale = 1;
  WeightSystem integer;
};

/// Solves A_j = wL_j - wR_1, B_j = -wL_j + wR_3 with both triples summing to zero,
/// using the particular solution wL_j = A_j - mean(A), wR_1 = -mean(A),
/// wR_2 = mean(A) - mean(B), wR_3 = mean(B); then clears denominators.
GeneratedWeights weights_from_cone_data(const std::array<Rat2, 3> &A, const std::array<Rat2, 3> &B);

struct InterpolationSpec {
  Rational a; ///< C = a*A_1 + b*B_1, a > 0
  Rational b; ///< b > 0
  std::vector<Rational> t;
};

/// Base coefficients from the interior witness of C in cone(A_1, B_1).
/// Throws PreconditionFailed when C is not interior to that cone.
InterpolationSpec make_interpolation_spec(const DerivedConeData &d, std::vector<Rational> t);

/// t = 0, 1/n, ..., 1.
std::vector<Rational> uniform_samples(int n);

/// Deforms A_j -> t*A_j + (1-t)*a*A_1, B_j -> t*B_j + (1-t)*b*B_1 with C fixed
/// and checks the cone condition at every sample.
bool check_interpolation_path(const DerivedConeData &d, const InterpolationSpec &spec);

/// Visits every zero-sum weight system with entries in [-bound, bound] that
/// satisfies the cone condition, in lexicographic order of (wL, wR).
/// The visitor returns false to stop early.
void enumerate_star_systems(int bound, const std::function<bool(const WeightSystem &)> &visit);

/// Collects the stream; work is split across hardware threads and merged in order.
std::vector<WeightSystem> enumerate_star_systems(int bound, unsigned threads = 0);

} // namespace twistflag

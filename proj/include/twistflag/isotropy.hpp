#pragma once

// Isotropy groups of the 2-torus action on support strata of the level set,
// freeness, and the flag-variety classification of free actions.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "twistflag/weight_system.hpp"

namespace twistflag {

/// Coordinates with z_i != 0 (I) and w_j != 0 (J); indices are 0-based.
struct SupportPattern {
  std::set<int> I;
  std::set<int> J;

  /// Throws InvalidInput unless I, J are nonempty subsets of {0,1,2} with
  /// some i in I, j in J, i != j.
  void validate() const;
  bool singleton() const { return I.size() == 1 && J.size() == 1; }
  bool full() const { return I.size() == 3 && J.size() == 3; }
};

struct IsotropyGroup {
  enum class Kind { Finite, PositiveDimensional };
  Kind kind = Kind::Finite;
  /// Finite: invariant factors d1 | d2 (1s included). Empty otherwise.
  std::vector<std::int64_t> factors;
  /// PositiveDimensional: 2 - rank of the exponent matrix.
  int rank_deficit = 0;

  std::int64_t order() const; ///< throws for positive-dimensional groups
  bool trivial() const { return kind == Kind::Finite && order() == 1; }
};

IsotropyGroup isotropy_at_support(const DerivedConeData &d, const SupportPattern &s);

struct FailingPair {
  int i = 0;
  int j = 0;
  std::int64_t determinant = 0;
};

struct FreenessVerdict {
  bool free = false;
  std::optional<FailingPair> failing_pair;
  bool flag_case_consistent = true;
};

/// Free iff (A_i, B_j) is a Z-basis for every i != j. Pairs are scanned
/// with j outer, i inner. When the originating weight system is supplied and
/// satisfies the cone condition, the verdict is compared with classify_flag_case.
FreenessVerdict freeness_check(const DerivedConeData &d,
                               const std::optional<WeightSystem> &origin = std::nullopt);

enum class ActionClass { FreeFlagCase, OrbifoldCase };

/// FreeFlagCase iff rho_L is trivial and rho_R is an isomorphism. Requires the
/// cone condition; throws InternalInconsistency if this disagrees with the
/// pairwise freeness test.
ActionClass classify_flag_case(const WeightSystem &ws);

enum class Realizability { Realizable, NotDetermined };

struct StratumReport {
  SupportPattern pattern;
  IsotropyGroup isotropy;
  Realizability realizable = Realizability::NotDetermined;
  /// Singleton strata: C = a*A_i + b*B_j, realized by z = sqrt(a) e_i, w = sqrt(b) e_j.
  std::optional<std::pair<Rational, Rational>> witness;
};

/// Every valid support pattern with its isotropy group: the six singleton
/// strata first in (i, j) order, then the full-support stratum, then the rest.
/// Requires the cone condition and integral data.
std::vector<StratumReport> singular_stratum_census(const DerivedConeData &d);

} // namespace twistflag

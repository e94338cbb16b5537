#include "twistflag/isotropy.hpp"

#include <sstream>

namespace twistflag {

void SupportPattern::validate() const {
  auto in_range = [](const std::set<int> &s) {
    return !s.empty() && *s.begin() >= 0 && *s.rbegin() <= 2;
  };
  if (!in_range(I) || !in_range(J)) {
    throw InvalidInput("support pattern needs nonempty I, J within {1,2,3}");
  }
  for (int i : I)
    for (int j : J)
      if (i != j) return;
  throw InvalidInput("support pattern has no pair i in I, j in J with i != j");
}

std::int64_t IsotropyGroup::order() const {
  if (kind != Kind::Finite) throw std::logic_error("positive-dimensional isotropy has no order");
  std::int64_t o = 1;
  for (auto f : factors) o *= f;
  return o;
}

IsotropyGroup isotropy_at_support(const DerivedConeData &d, const SupportPattern &s) {
  s.validate();
  std::vector<std::array<std::int64_t, 2>> rows;
  for (int i : s.I) rows.push_back(to_int2(d.A[i]));
  for (int j : s.J) rows.push_back(to_int2(d.B[j]));
  // The isotropy group is the kernel of t -> (t^{row})_rows on (S^1)^2.
  SmithResult snf = smith_invariant_factors(IntMat(std::move(rows)));
  IsotropyGroup g;
  if (snf.rank < 2) {
    g.kind = IsotropyGroup::Kind::PositiveDimensional;
    g.rank_deficit = 2 - snf.rank;
  } else {
    g.factors = std::move(snf.factors);
  }
  return g;
}

namespace {

FreenessVerdict pairwise_freeness(const DerivedConeData &d) {
  FreenessVerdict v;
  v.free = true;
  for (int j = 0; j < 3 && v.free; ++j) {
    for (int i = 0; i < 3; ++i) {
      if (i == j) continue;
      if (!is_unimodular_pair(d.A[i], d.B[j])) {
        Rational det = cross(d.A[i], d.B[j]);
        v.free = false;
        v.failing_pair = FailingPair{i, j, det.numerator().convert_to<std::int64_t>()};
        break;
      }
    }
  }
  return v;
}

ActionClass classify_by_weights(const WeightSystem &ws) {
  if (!ws.left_trivial()) return ActionClass::OrbifoldCase;
  const auto &r1 = ws.wR[0];
  const auto &r2 = ws.wR[1];
  const std::int64_t det = r1[0] * r2[1] - r1[1] * r2[0];
  return (det == 1 || det == -1) ? ActionClass::FreeFlagCase : ActionClass::OrbifoldCase;
}

} // namespace

FreenessVerdict freeness_check(const DerivedConeData &d, const std::optional<WeightSystem> &origin) {
  FreenessVerdict v = pairwise_freeness(d);
  if (origin && star_holds(derive(*origin))) {
    v.flag_case_consistent = (classify_by_weights(*origin) == ActionClass::FreeFlagCase) == v.free;
  }
  return v;
}

ActionClass classify_flag_case(const WeightSystem &ws) {
  const DerivedConeData d = derive(ws);
  if (!star_holds(d)) throw PreconditionFailed("flag-case classification requires the cone condition");
  const ActionClass cls = classify_by_weights(ws);
  const bool free = pairwise_freeness(d).free;
  if (free != (cls == ActionClass::FreeFlagCase)) {
    throw InternalInconsistency("weight classification disagrees with pairwise freeness");
  }
  return cls;
}

std::vector<StratumReport> singular_stratum_census(const DerivedConeData &d) {
  if (!d.is_integral()) throw InvalidInput("stratum census needs integral cone data");
  if (!star_holds(d)) throw PreconditionFailed("stratum census requires the cone condition");

  std::vector<StratumReport> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      StratumReport r;
      r.pattern = {{i}, {j}};
      r.isotropy = isotropy_at_support(d, r.pattern);
      ConeMembership m = in_cone2(d.C, d.A[i], d.B[j]);
      if (m.strictly_positive()) {
        r.realizable = Realizability::Realizable;
        r.witness = m.coefficients;
      } else {
        std::ostringstream os;
        os << "cone condition holds but C has no positive witness in cone(A_" << i + 1 << ", B_" << j + 1
           << ")";
        throw InternalInconsistency(os.str());
      }
      out.push_back(std::move(r));
    }
  }

  StratumReport generic;
  generic.pattern = {{0, 1, 2}, {0, 1, 2}};
  generic.isotropy = isotropy_at_support(d, generic.pattern);
  generic.realizable = Realizability::Realizable; // open dense stratum of the level set
  out.push_back(std::move(generic));

  for (int im = 1; im < 8; ++im) {
    for (int jm = 1; jm < 8; ++jm) {
      SupportPattern p;
      for (int k = 0; k < 3; ++k) {
        if (im & (1 << k)) p.I.insert(k);
        if (jm & (1 << k)) p.J.insert(k);
      }
      if (p.singleton() || p.full()) continue;
      try {
        p.validate();
      } catch (const InvalidInput &) {
        continue;
      }
      StratumReport r;
      r.pattern = p;
      r.isotropy = isotropy_at_support(d, p);
      out.push_back(std::move(r));
    }
  }
  return out;
}

} // namespace twistflag

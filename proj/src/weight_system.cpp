#include "twistflag/weight_system.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

namespace twistflag {

namespace {

Rat2 to_rat2(const Int2 &v) { return Rat2(v[0], v[1]); }

// Zero-sum triples with entries in [-bound, bound], lexicographic.
std::vector<std::array<Int2, 3>> zero_sum_triples(int bound) {
  std::vector<std::array<Int2, 3>> out;
  if (bound < 0) return out;
  const std::int64_t b = bound;
  for (std::int64_t x1 = -b; x1 <= b; ++x1)
    for (std::int64_t y1 = -b; y1 <= b; ++y1)
      for (std::int64_t x2 = -b; x2 <= b; ++x2)
        for (std::int64_t y2 = -b; y2 <= b; ++y2) {
          const std::int64_t x3 = -x1 - x2;
          const std::int64_t y3 = -y1 - y2;
          if (x3 < -b || x3 > b || y3 < -b || y3 > b) continue;
          out.push_back({Int2{x1, y1}, Int2{x2, y2}, Int2{x3, y3}});
        }
  return out;
}

Integer lcm_int(const Integer &a, const Integer &b) { return a / boost::multiprecision::gcd(a, b) * b; }

} // namespace

void WeightSystem::validate() const {
  for (int c = 0; c < 2; ++c) {
    if (wL[0][c] + wL[1][c] + wL[2][c] != 0) throw InvalidInput("weights wL do not sum to zero");
    if (wR[0][c] + wR[1][c] + wR[2][c] != 0) throw InvalidInput("weights wR do not sum to zero");
  }
}

bool WeightSystem::left_trivial() const {
  return std::all_of(wL.begin(), wL.end(), [](const Int2 &w) { return w[0] == 0 && w[1] == 0; });
}

void DerivedConeData::validate() const {
  for (int j = 0; j < 3; ++j) {
    if (!(A[j] + B[j] == C)) {
      std::ostringstream os;
      os << "cone data violates A_j + B_j = C at j=" << j + 1 << ": " << A[j] << " + " << B[j]
         << " != " << C;
      throw InvalidInput(os.str());
    }
  }
}

bool DerivedConeData::is_integral() const {
  auto integral = [](const Rat2 &v) { return v.is_integral(); };
  return std::all_of(A.begin(), A.end(), integral) && std::all_of(B.begin(), B.end(), integral) &&
         C.is_integral();
}

DerivedConeData DerivedConeData::from_AB(const std::array<Rat2, 3> &A, const std::array<Rat2, 3> &B) {
  DerivedConeData d{A, B, A[0] + B[0]};
  d.validate();
  return d;
}

DerivedConeData derive(const WeightSystem &ws) {
  ws.validate();
  DerivedConeData d;
  const Rat2 r1 = to_rat2(ws.wR[0]);
  const Rat2 r3 = to_rat2(ws.wR[2]);
  for (int j = 0; j < 3; ++j) {
    const Rat2 l = to_rat2(ws.wL[j]);
    d.A[j] = l - r1;
    d.B[j] = r3 - l;
  }
  d.C = r3 - r1;
  d.validate();
  return d;
}

ConditionReport check_star(const DerivedConeData &d) {
  ConditionReport rep;
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      PairCheck a{i, j, in_cone2(d.C, d.A[i], d.A[j])};
      PairCheck b{i, j, in_cone2(d.C, d.B[i], d.B[j])};
      PairCheck m{i, j, in_cone2(d.C, d.A[i], d.B[j])};
      ok = ok && !a.membership.member() && !b.membership.member() && m.membership.member();
      rep.a_pairs.push_back(std::move(a));
      rep.b_pairs.push_back(std::move(b));
      rep.mixed_pairs.push_back(std::move(m));
    }
  }
  rep.star = ok;
  rep.nrc = check_nrc(d);
  return rep;
}

bool star_holds(const DerivedConeData &d) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (in_cone2(d.C, d.A[i], d.A[j]).member()) return false;
      if (in_cone2(d.C, d.B[i], d.B[j]).member()) return false;
      if (!in_cone2(d.C, d.A[i], d.B[j]).member()) return false;
    }
  }
  return true;
}

NrcResult check_nrc(const DerivedConeData &d) {
  NrcResult res;
  for (int i = 0; i < 3 && !res.n; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      if (auto ab = positive_combination(d.C, d.A[i], d.B[j])) {
        res.n = true;
        res.n_witness = NonemptyWitness{i, j, ab->first, ab->second};
        break;
      }
    }
  }

  res.r = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && cross(d.A[i], d.B[j]) == 0) res.r = false;

  const std::vector<Rat2> as(d.A.begin(), d.A.end());
  const std::vector<Rat2> bs(d.B.begin(), d.B.end());
  std::vector<Rat2> all = as;
  all.insert(all.end(), bs.begin(), bs.end());
  const bool nonzero = std::none_of(all.begin(), all.end(), [](const Rat2 &g) { return g.is_zero(); });
  if (nonzero) res.apex = find_apex_functional(all);
  res.c = nonzero && !in_cone_many(d.C, as).membership.member() &&
          !in_cone_many(d.C, bs).membership.member() && res.apex.has_value();
  return res;
}

GeneratedWeights weights_from_cone_data(const std::array<Rat2, 3> &A, const std::array<Rat2, 3> &B) {
  DerivedConeData::from_AB(A, B); // validates A_j + B_j constant

  const Rational third(1, 3);
  const Rat2 mean_a = third * (A[0] + A[1] + A[2]);
  const Rat2 mean_b = third * (B[0] + B[1] + B[2]);

  GeneratedWeights out;
  for (int j = 0; j < 3; ++j) out.rational.wL[j] = A[j] - mean_a;
  out.rational.wR[0] = -mean_a;
  out.rational.wR[1] = mean_a - mean_b;
  out.rational.wR[2] = mean_b;

  Integer scale = 1;
  auto absorb = [&](const Rat2 &v) {
    scale = lcm_int(scale, v.x.denominator());
    scale = lcm_int(scale, v.y.denominator());
  };
  for (const auto &v : out.rational.wL) absorb(v);
  for (const auto &v : out.rational.wR) absorb(v);
  out.scale = scale.convert_to<std::int64_t>();

  const Rational s(scale);
  for (int j = 0; j < 3; ++j) {
    out.integer.wL[j] = to_int2(s * out.rational.wL[j]);
    out.integer.wR[j] = to_int2(s * out.rational.wR[j]);
  }
  out.integer.validate();
  return out;
}

InterpolationSpec make_interpolation_spec(const DerivedConeData &d, std::vector<Rational> t) {
  ConeMembership m = in_cone2(d.C, d.A[0], d.B[0]);
  if (m.status != ConeStatus::Interior) {
    throw PreconditionFailed("C is not in the interior of cone(A_1, B_1)");
  }
  return {m.coefficients->first, m.coefficients->second, std::move(t)};
}

std::vector<Rational> uniform_samples(int n) {
  if (n < 1) throw InvalidInput("interpolation needs at least one subdivision");
  std::vector<Rational> t;
  for (int k = 0; k <= n; ++k) t.emplace_back(Integer(k), Integer(n));
  return t;
}

bool check_interpolation_path(const DerivedConeData &d, const InterpolationSpec &spec) {
  if (!(spec.a > 0 && spec.b > 0) || !(spec.a * d.A[0] + spec.b * d.B[0] == d.C)) {
    throw PreconditionFailed("interpolation base is not an interior witness C = a*A_1 + b*B_1");
  }
  if (!star_holds(d)) throw PreconditionFailed("interpolation path requires the cone condition");
  const Rat2 a0 = spec.a * d.A[0];
  const Rat2 b0 = spec.b * d.B[0];
  for (const Rational &t : spec.t) {
    if (t < 0 || t > 1) throw InvalidInput("interpolation parameter outside [0, 1]");
    DerivedConeData dt;
    dt.C = d.C;
    for (int j = 0; j < 3; ++j) {
      dt.A[j] = t * d.A[j] + (1 - t) * a0;
      dt.B[j] = t * d.B[j] + (1 - t) * b0;
    }
    dt.validate();
    if (!star_holds(dt)) return false;
  }
  return true;
}

void enumerate_star_systems(int bound, const std::function<bool(const WeightSystem &)> &visit) {
  const auto triples = zero_sum_triples(bound);
  for (const auto &l : triples) {
    for (const auto &r : triples) {
      WeightSystem ws{l, r};
      if (star_holds(derive(ws)) && !visit(ws)) return;
    }
  }
}

std::vector<WeightSystem> enumerate_star_systems(int bound, unsigned threads) {
  const auto triples = zero_sum_triples(bound);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(triples.size())));

  // Contiguous blocks of left triples; concatenating blocks restores the order.
  std::vector<std::vector<WeightSystem>> parts(threads);
  auto work = [&](unsigned part) {
    const std::size_t lo = triples.size() * part / threads;
    const std::size_t hi = triples.size() * (part + 1) / threads;
    for (std::size_t li = lo; li < hi; ++li) {
      for (const auto &r : triples) {
        WeightSystem ws{triples[li], r};
        if (star_holds(derive(ws))) parts[part].push_back(ws);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned p = 1; p < threads; ++p) pool.emplace_back(work, p);
  if (!triples.empty()) work(0);
  for (auto &th : pool) th.join();

  std::vector<WeightSystem> out;
  for (auto &p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

} // namespace twistflag

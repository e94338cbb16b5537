#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twistflag/weight_system.hpp"

using namespace twistflag;

namespace {

const std::array<Rat2, 3> kA{Rat2(1, 0), Rat2(1, 0), Rat2(2, -1)};
const std::array<Rat2, 3> kB{Rat2(0, 1), Rat2(0, 1), Rat2(-1, 2)};

DerivedConeData example() { return DerivedConeData::from_AB(kA, kB); }

DerivedConeData standard_torus() {
  return DerivedConeData::from_AB({Rat2(-1, 0), Rat2(-1, 0), Rat2(-1, 0)}, {Rat2(-1, -1), Rat2(-1, -1), Rat2(-1, -1)});
}

DerivedConeData zero_data() { return derive(WeightSystem{}); }

// Applies an invertible integer matrix to every vector.
DerivedConeData transform(const DerivedConeData &d, int a, int b, int c, int e) {
  auto m = [&](const Rat2 &v) { return Rat2(Rational(a) * v.x + Rational(b) * v.y, Rational(c) * v.x + Rational(e) * v.y); };
  DerivedConeData out;
  for (int j = 0; j < 3; ++j) {
    out.A[j] = m(d.A[j]);
    out.B[j] = m(d.B[j]);
  }
  out.C = m(d.C);
  return out;
}

} // namespace

TEST_SUITE("weight_system") {

TEST_CASE("derive examples") {
  const WeightSystem weights{{Int2{-1, 1}, Int2{-1, 1}, Int2{2, -2}}, {Int2{-4, 1}, Int2{5, -5}, Int2{-1, 4}}};
  DerivedConeData d = derive(weights);
  CHECK(d.A == std::array<Rat2, 3>{Rat2(3, 0), Rat2(3, 0), Rat2(6, -3)});
  CHECK(d.B == std::array<Rat2, 3>{Rat2(0, 3), Rat2(0, 3), Rat2(-3, 6)});
  CHECK(d.C == Rat2(3, 3));

  const WeightSystem torus{{}, {Int2{1, 0}, Int2{0, 1}, Int2{-1, -1}}};
  d = derive(torus);
  for (int j = 0; j < 3; ++j) {
    CHECK(d.A[j] == Rat2(-1, 0));
    CHECK(d.B[j] == Rat2(-1, -1));
  }
  CHECK(d.C == Rat2(-2, -1));

  d = zero_data();
  for (int j = 0; j < 3; ++j) CHECK((d.A[j].is_zero() && d.B[j].is_zero()));
  CHECK(d.C.is_zero());

  const WeightSystem bad{{Int2{1, 0}, Int2{0, 0}, Int2{0, 0}}, {}};
  CHECK_THROWS_AS(derive(bad), InvalidInput);
  CHECK_THROWS_AS(DerivedConeData::from_AB(kA, {Rat2(0, 1), Rat2(0, 1), Rat2(-1, 3)}), InvalidInput);
}

TEST_CASE("check_star examples") {
  const ConditionReport r = check_star(example());
  CHECK(r.star);
  CHECK(r.a_pairs.size() == 9);
  CHECK(r.b_pairs.size() == 9);
  CHECK(r.mixed_pairs.size() == 9);
  for (const auto &p : r.a_pairs) CHECK_FALSE(p.membership.member());
  for (const auto &p : r.b_pairs) CHECK_FALSE(p.membership.member());
  for (const auto &p : r.mixed_pairs) CHECK(p.membership.strictly_positive());

  CHECK(check_star(standard_torus()).star);
  CHECK_FALSE(check_star(zero_data()).star);
  CHECK(star_holds(example()));
  CHECK_FALSE(star_holds(zero_data()));
}

TEST_CASE("check_nrc examples") {
  NrcResult n = check_nrc(example());
  CHECK(n.n);
  REQUIRE(n.n_witness);
  CHECK(n.n_witness->i == 0);
  CHECK(n.n_witness->j == 1);
  CHECK(n.n_witness->a == 1);
  CHECK(n.n_witness->b == 1);
  CHECK(n.r);
  CHECK(n.c);
  REQUIRE(n.apex);
  CHECK(*n.apex == Rat2(1, 1));

  // A_1 = B_2 = (1,0)
  const DerivedConeData dep2 = DerivedConeData::from_AB({Rat2(1, 0), Rat2(0, 1), Rat2(1, 1)}, {Rat2(1, 1), Rat2(2, 0), Rat2(1, 0)});
  CHECK(dep2.A[0] == dep2.B[2]);
  CHECK_FALSE(check_nrc(dep2).r);

  n = check_nrc(zero_data());
  CHECK_FALSE(n.c);
  CHECK_FALSE(n.apex);
}

TEST_CASE("weights_from_cone_data examples") {
  GeneratedWeights g = weights_from_cone_data(kA, kB);
  CHECK(g.rational.wL[0] == Rat2(Rational(-1, 3), Rational(1, 3)));
  CHECK(g.rational.wR[1] == Rat2(Rational(5, 3), Rational(-5, 3)));
  CHECK(g.scale == 3);
  CHECK(g.integer.wL == std::array<Int2, 3>{Int2{-1, 1}, Int2{-1, 1}, Int2{2, -2}});
  CHECK(g.integer.wR == std::array<Int2, 3>{Int2{-4, 1}, Int2{5, -5}, Int2{-1, 4}});

  g = weights_from_cone_data({Rat2(-1, 0), Rat2(-1, 0), Rat2(-1, 0)}, {Rat2(-1, -1), Rat2(-1, -1), Rat2(-1, -1)});
  CHECK(g.integer.left_trivial());
  CHECK(g.scale == 1);
  CHECK(g.integer.wR == std::array<Int2, 3>{Int2{1, 0}, Int2{0, 1}, Int2{-1, -1}});

  g = weights_from_cone_data({}, {});
  CHECK(g.scale == 1);
  CHECK(g.integer == WeightSystem{});
}

TEST_CASE("generated weights derive back to the cone data") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  for (int k = 0; k < 500; ++k) {
    std::array<Rat2, 3> A, B;
    const Rat2 C(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    for (int j = 0; j < 3; ++j) {
      A[j] = Rat2(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
      B[j] = C - A[j];
    }
    const GeneratedWeights g = weights_from_cone_data(A, B);
    // Rational system: A_j = wL_j - wR_1, B_j = wR_3 - wL_j, both triples sum to zero.
    Rat2 sl, sr;
    for (int j = 0; j < 3; ++j) {
      CHECK(g.rational.wL[j] - g.rational.wR[0] == A[j]);
      CHECK(g.rational.wR[2] - g.rational.wL[j] == B[j]);
      sl += g.rational.wL[j];
      sr += g.rational.wR[j];
    }
    CHECK(sl.is_zero());
    CHECK(sr.is_zero());
    // Integer system is the rational one times the (minimal) scale.
    const DerivedConeData d = derive(g.integer);
    const Rational s(g.scale);
    for (int j = 0; j < 3; ++j) {
      CHECK(d.A[j] == s * A[j]);
      CHECK(d.B[j] == s * B[j]);
    }
    for (std::int64_t smaller = 1; smaller < g.scale; ++smaller) {
      bool integral = true;
      for (int j = 0; j < 3; ++j) {
        integral = integral && (Rational(smaller) * g.rational.wL[j]).is_integral() &&
                   (Rational(smaller) * g.rational.wR[j]).is_integral();
      }
      CHECK_FALSE(integral);
    }
  }
}

TEST_CASE("derive then generate recovers integer weights up to the scale") {
  for (const auto &ws : enumerate_star_systems(1)) {
    const DerivedConeData d = derive(ws);
    const GeneratedWeights g = weights_from_cone_data(d.A, d.B);
    const DerivedConeData back = derive(g.integer);
    for (int j = 0; j < 3; ++j) CHECK(back.A[j] == Rational(g.scale) * d.A[j]);
  }
}

TEST_CASE("cone condition is invariant under relabelling, swapping sides and GL2 changes") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coord(-3, 3);
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int k = 0; k < 400; ++k) {
    DerivedConeData d;
    d.C = Rat2(coord(rng), coord(rng));
    for (int j = 0; j < 3; ++j) {
      d.A[j] = Rat2(coord(rng), coord(rng));
      d.B[j] = d.C - d.A[j];
    }
    const bool base = star_holds(d);
    CHECK(base == oracle::star(d));
    for (const auto &p : perms) {
      DerivedConeData q = d;
      for (int j = 0; j < 3; ++j) {
        q.A[j] = d.A[p[j]];
        q.B[j] = d.B[p[j]];
      }
      CHECK(star_holds(q) == base);
    }
    DerivedConeData swapped{d.B, d.A, d.C};
    CHECK(star_holds(swapped) == base);
    CHECK(star_holds(transform(d, 2, 1, 1, 1)) == base);
    CHECK(star_holds(transform(d, 0, -1, 1, 3)) == base);
    CHECK(star_holds(transform(d, 3, 0, 0, 2)) == base);
  }
}

TEST_CASE("cone condition implies (N), (R), (C) on random data") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> coord(-4, 4);
  int star_count = 0;
  for (int k = 0; k < 20000; ++k) {
    DerivedConeData d;
    d.C = Rat2(coord(rng), coord(rng));
    for (int j = 0; j < 3; ++j) {
      d.A[j] = Rat2(coord(rng), coord(rng));
      d.B[j] = d.C - d.A[j];
    }
    const ConditionReport r = check_star(d);
    CHECK(r.star == oracle::star(d));
    if (!r.star) continue;
    ++star_count;
    CHECK(r.nrc.n);
    CHECK(r.nrc.r);
    CHECK(r.nrc.c);
  }
  CHECK(star_count > 0);
}

TEST_CASE("interpolation path examples") {
  const DerivedConeData d = example();
  std::vector<Rational> quarters;
  for (int k = 0; k <= 4; ++k) quarters.emplace_back(Integer(k), Integer(4));
  const InterpolationSpec spec = make_interpolation_spec(d, quarters);
  CHECK(spec.a == 1);
  CHECK(spec.b == 1);
  CHECK(check_interpolation_path(d, spec));
  CHECK(check_interpolation_path(d, make_interpolation_spec(d, {Rational(1)})));
  CHECK(check_interpolation_path(d, make_interpolation_spec(d, {Rational(0)})));
  CHECK_THROWS_AS(check_interpolation_path(d, make_interpolation_spec(d, {Rational(3, 2)})), InvalidInput);
  CHECK_THROWS_AS(make_interpolation_spec(zero_data(), {Rational(0)}), PreconditionFailed);
  CHECK(uniform_samples(8).size() == 9);
  CHECK(uniform_samples(8)[3] == Rational(3, 8));
  CHECK_THROWS_AS(uniform_samples(0), InvalidInput);
}

TEST_CASE("enumeration matches the exhaustive oracle at bound 1") {
  const auto systems = enumerate_star_systems(1);
  CHECK(systems == oracle::enumerate(1));
  CHECK(systems.size() == 24);
  CHECK(std::is_sorted(systems.begin(), systems.end()));

  // The six coordinate permutations of the standard maximal torus.
  std::array<Int2, 3> wr{Int2{1, 0}, Int2{0, 1}, Int2{-1, -1}};
  std::sort(wr.begin(), wr.end());
  int found = 0;
  do {
    found += std::count(systems.begin(), systems.end(), WeightSystem{{}, wr}) ? 1 : 0;
  } while (std::next_permutation(wr.begin(), wr.end()));
  CHECK(found == 6);
}

TEST_CASE("enumeration at bounds 0 and 2") {
  CHECK(enumerate_star_systems(0).empty());
  const auto two = enumerate_star_systems(2);
  CHECK(two.size() == 2856);
  CHECK(std::any_of(two.begin(), two.end(), [](const WeightSystem &w) { return !w.left_trivial(); }));
  CHECK(enumerate_star_systems(2, 1) == two);
  CHECK(enumerate_star_systems(2, 7) == two);

  std::vector<WeightSystem> streamed;
  enumerate_star_systems(2, [&](const WeightSystem &w) {
    streamed.push_back(w);
    return true;
  });
  CHECK(streamed == two);

  int seen = 0;
  enumerate_star_systems(2, [&](const WeightSystem &) { return ++seen < 5; });
  CHECK(seen == 5);
}

} // TEST_SUITE

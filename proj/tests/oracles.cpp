#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oracle {

long long cross(const I2 &a, const I2 &b) { return a[0] * b[1] - a[1] * b[0]; }

namespace {

long long dot(const I2 &a, const I2 &b) { return a[0] * b[0] + a[1] * b[1]; }
bool zero(const I2 &a) { return a[0] == 0 && a[1] == 0; }
bool on_ray(const I2 &c, const I2 &g) { return !zero(g) && cross(g, c) == 0 && dot(g, c) > 0; }

I2 scaled(const twistflag::Rat2 &v, long long den) {
  auto part = [&](const twistflag::Rational &q) {
    return (q.numerator() * (den / q.denominator().convert_to<long long>())).convert_to<long long>();
  };
  return {part(v.x), part(v.y)};
}

} // namespace

bool in_cone(const I2 &c, const I2 &g1, const I2 &g2) {
  if (zero(c)) return true;
  const long long s = cross(g1, g2);
  if (s != 0) {
    const long long sign = s > 0 ? 1 : -1;
    return sign * cross(g1, c) >= 0 && sign * cross(c, g2) >= 0;
  }
  return on_ray(c, g1) || on_ray(c, g2);
}

bool star(const twistflag::DerivedConeData &d) {
  long long den = 1;
  auto fold = [&](const twistflag::Rat2 &v) {
    den = std::lcm(den, v.x.denominator().convert_to<long long>());
    den = std::lcm(den, v.y.denominator().convert_to<long long>());
  };
  for (int k = 0; k < 3; ++k) {
    fold(d.A[k]);
    fold(d.B[k]);
  }
  fold(d.C);
  std::array<I2, 3> A, B;
  for (int k = 0; k < 3; ++k) {
    A[k] = scaled(d.A[k], den);
    B[k] = scaled(d.B[k], den);
  }
  const I2 C = scaled(d.C, den);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (in_cone(C, A[i], A[j]) || in_cone(C, B[i], B[j]) || !in_cone(C, A[i], B[j])) return false;
    }
  }
  return true;
}

std::array<long long, 3> smith_by_minors(const std::vector<I2> &rows) {
  long long g1 = 0, g2 = 0;
  for (const auto &r : rows) g1 = std::gcd(g1, std::gcd(std::llabs(r[0]), std::llabs(r[1])));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b) g2 = std::gcd(g2, std::llabs(cross(rows[a], rows[b])));
  if (g1 == 0) return {0, 0, 0};
  if (g2 == 0) return {1, g1, 0};
  return {2, g1, g2 / g1};
}

long long isotropy_order_by_roots(const std::vector<I2> &rows) {
  long long D = 0;
  for (std::size_t a = 0; a < rows.size() && D == 0; ++a)
    for (std::size_t b = a + 1; b < rows.size() && D == 0; ++b) D = std::llabs(cross(rows[a], rows[b]));
  if (D == 0) throw std::invalid_argument("rank < 2");
  long long count = 0;
  for (long long k1 = 0; k1 < D; ++k1) {
    for (long long k2 = 0; k2 < D; ++k2) {
      bool fixed = true;
      for (const auto &r : rows) fixed = fixed && ((r[0] * k1 + r[1] * k2) % D == 0);
      count += fixed ? 1 : 0;
    }
  }
  return count;
}

std::vector<twistflag::WeightSystem> enumerate(int bound) {
  std::vector<twistflag::Int2> vecs;
  for (long long a = -bound; a <= bound; ++a)
    for (long long b = -bound; b <= bound; ++b) vecs.push_back({a, b});
  auto in_range = [&](const twistflag::Int2 &v) {
    return std::llabs(v[0]) <= bound && std::llabs(v[1]) <= bound;
  };
  std::vector<std::array<twistflag::Int2, 3>> triples;
  for (const auto &u : vecs)
    for (const auto &v : vecs) {
      twistflag::Int2 w{-u[0] - v[0], -u[1] - v[1]};
      if (in_range(w)) triples.push_back({u, v, w});
    }
  std::vector<twistflag::WeightSystem> out;
  for (const auto &l : triples) {
    for (const auto &r : triples) {
      twistflag::WeightSystem ws{l, r};
      // A_j = wL_j - wR_1, B_j = wR_3 - wL_j, C = wR_3 - wR_1
      twistflag::DerivedConeData d;
      for (int j = 0; j < 3; ++j) {
        d.A[j] = twistflag::Rat2(l[j][0] - r[0][0], l[j][1] - r[0][1]);
        d.B[j] = twistflag::Rat2(r[2][0] - l[j][0], r[2][1] - l[j][1]);
      }
      d.C = twistflag::Rat2(r[2][0] - r[0][0], r[2][1] - r[0][1]);
      if (star(d)) out.push_back(ws);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

I2 to_i2(const twistflag::Rat2 &v) {
  if (v.x.denominator() != 1 || v.y.denominator() != 1) throw std::invalid_argument("non-integral vector");
  return {v.x.numerator().convert_to<long long>(), v.y.numerator().convert_to<long long>()};
}

} // namespace oracle

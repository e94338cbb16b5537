#include "twistflag/exact_geometry.hpp"

#include <algorithm>
#include <sstream>

namespace twistflag {

std::string to_string(const Rational &q) {
  std::ostringstream os;
  os << q.numerator();
  if (q.denominator() != 1) os << '/' << q.denominator();
  return os.str();
}

Rational parse_rational(const std::string &raw) {
  const auto first = raw.find_first_not_of(" \t");
  const std::string text = first == std::string::npos ? "" : raw.substr(first, raw.find_last_not_of(" \t") - first + 1);
  auto parse_int = [&](const std::string &s) -> Integer {
    if (s.empty()) throw InvalidInput("empty integer in rational '" + text + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InvalidInput("bad rational '" + text + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') throw InvalidInput("bad rational '" + text + "'");
    }
    try {
      return Integer(s[0] == '+' ? s.substr(1) : s);
    } catch (const std::exception &) {
      throw InvalidInput("rational out of range '" + text + "'");
    }
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

double to_double(const Rational &q) {
  return q.numerator().convert_to<double>() / q.denominator().convert_to<double>();
}

bool is_integer(const Rational &q) { return q.denominator() == 1; }

std::ostream &operator<<(std::ostream &os, const Rat2 &v) {
  return os << '(' << to_string(v.x) << ", " << to_string(v.y) << ')';
}

Rational cross(const Rat2 &a, const Rat2 &b) { return a.x * b.y - a.y * b.x; }
Rational dot(const Rat2 &a, const Rat2 &b) { return a.x * b.x + a.y * b.y; }

std::string to_string(ConeStatus s) {
  switch (s) {
  case ConeStatus::Outside: return "outside";
  case ConeStatus::OnBoundaryRay: return "boundary";
  case ConeStatus::Interior: return "interior";
  }
  return "?";
}

bool ConeMembership::strictly_positive() const {
  return coefficients && coefficients->first > 0 && coefficients->second > 0;
}

namespace {

// lambda > 0 with c = lambda * g, for nonzero g.
std::optional<Rational> on_open_ray(const Rat2 &c, const Rat2 &g) {
  if (g.is_zero() || cross(c, g) != 0) return std::nullopt;
  Rational d = dot(c, g);
  if (d <= 0) return std::nullopt;
  return d / dot(g, g);
}

} // namespace

ConeMembership in_cone2(const Rat2 &c, const Rat2 &g1, const Rat2 &g2) {
  if (c.is_zero()) {
    return {ConeStatus::OnBoundaryRay, std::pair{Rational(0), Rational(0)}};
  }
  const Rational det = cross(g1, g2);
  if (det != 0) {
    Rational l1 = cross(c, g2) / det;
    Rational l2 = cross(g1, c) / det;
    if (l1 < 0 || l2 < 0) return {};
    auto status = (l1 > 0 && l2 > 0) ? ConeStatus::Interior : ConeStatus::OnBoundaryRay;
    return {status, std::pair{std::move(l1), std::move(l2)}};
  }
  // Dependent generators: the cone is a point, a ray or a line, i.e. a union of rays.
  if (auto l = on_open_ray(c, g1)) return {ConeStatus::OnBoundaryRay, std::pair{*l, Rational(0)}};
  if (auto l = on_open_ray(c, g2)) return {ConeStatus::OnBoundaryRay, std::pair{Rational(0), *l}};
  return {};
}

ConeManyMembership in_cone_many(const Rat2 &c, const std::vector<Rat2> &gens) {
  if (gens.empty()) throw InvalidInput("in_cone_many: empty generator list");
  ConeManyMembership best;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i; j < gens.size(); ++j) {
      ConeMembership m = in_cone2(c, gens[i], gens[j]);
      if (!m.member()) continue;
      if (m.status == ConeStatus::Interior) return {std::move(m), std::pair{i, j}};
      if (!best.membership.member()) best = {std::move(m), std::pair{i, j}};
    }
  }
  return best;
}

std::optional<Rat2> find_apex_functional(const std::vector<Rat2> &gens) {
  if (gens.empty()) throw InvalidInput("find_apex_functional: empty generator list");
  for (const auto &g : gens) {
    if (g.is_zero()) throw InvalidInput("find_apex_functional: zero generator");
  }
  auto strictly_positive_on_all = [&](const Rat2 &alpha) {
    return std::all_of(gens.begin(), gens.end(), [&](const Rat2 &g) { return apply(alpha, g) > 0; });
  };

  // Look for an independent extreme pair whose cone contains every generator;
  // the sum of its dual basis is then positive on the whole cone.
  bool any_independent = false;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Rational det = cross(gens[i], gens[j]);
      if (det == 0) continue;
      any_independent = true;
      bool spans_all = std::all_of(gens.begin(), gens.end(), [&](const Rat2 &g) {
        return in_cone2(g, gens[i], gens[j]).member();
      });
      if (!spans_all) continue;
      const Rat2 &u = gens[i];
      const Rat2 &v = gens[j];
      Rat2 alpha{(v.y - u.y) / det, (u.x - v.x) / det};
      if (!strictly_positive_on_all(alpha)) {
        throw std::logic_error("find_apex_functional: dual-basis functional not positive");
      }
      return alpha;
    }
  }
  if (any_independent) return std::nullopt;

  // All generators collinear: an apex exists iff they all point the same way.
  const Rat2 &g0 = gens.front();
  if (strictly_positive_on_all(g0)) return g0;
  return std::nullopt;
}

std::optional<std::pair<Rational, Rational>> positive_combination(const Rat2 &c, const Rat2 &g1,
                                                                  const Rat2 &g2) {
  const Rational det = cross(g1, g2);
  if (det != 0) {
    Rational a = cross(c, g2) / det;
    Rational b = cross(g1, c) / det;
    if (a > 0 && b > 0) return std::pair{std::move(a), std::move(b)};
    return std::nullopt;
  }
  if (g1.is_zero() && g2.is_zero()) {
    if (c.is_zero()) return std::pair{Rational(1), Rational(1)};
    return std::nullopt;
  }
  if (g1.is_zero()) {
    if (auto b = on_open_ray(c, g2)) return std::pair{Rational(1), *b};
    return std::nullopt;
  }
  if (g2.is_zero()) {
    if (auto a = on_open_ray(c, g1)) return std::pair{*a, Rational(1)};
    return std::nullopt;
  }
  // g2 = k*g1 with k != 0; need c = m*g1 and a + b*k = m with a, b > 0.
  if (cross(c, g1) != 0) return std::nullopt;
  const Rational gg = dot(g1, g1);
  const Rational k = dot(g2, g1) / gg;
  const Rational m = dot(c, g1) / gg;
  if (k > 0) {
    if (m <= 0) return std::nullopt;
    return std::pair{m / 2, m / (2 * k)};
  }
  const Rational abs_m = m < 0 ? -m : m;
  Rational b = (abs_m + 1) / -k;
  Rational a = m - b * k;
  return std::pair{std::move(a), std::move(b)};
}

std::array<std::int64_t, 2> to_int2(const Rat2 &v) {
  if (!v.is_integral()) {
    std::ostringstream os;
    os << "expected an integer vector, got " << v;
    throw InvalidInput(os.str());
  }
  return {v.x.numerator().convert_to<std::int64_t>(), v.y.numerator().convert_to<std::int64_t>()};
}

bool is_unimodular_pair(const Rat2 &a, const Rat2 &b) {
  auto ia = to_int2(a);
  auto ib = to_int2(b);
  Integer det = Integer(ia[0]) * ib[1] - Integer(ia[1]) * ib[0];
  return det == 1 || det == -1;
}

IntMat::IntMat(std::vector<std::array<std::int64_t, 2>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InvalidInput("IntMat needs at least one row");
}

SmithResult smith_invariant_factors(const IntMat &m) {
  const std::size_t nr = m.rows();
  constexpr std::size_t nc = 2;
  std::vector<std::array<Integer, nc>> a(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) a[r][c] = m(r, c);
  }
  auto abs_int = [](const Integer &x) { return x < 0 ? Integer(-x) : x; };

  SmithResult out;
  for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
    for (;;) {
      // Pivot: smallest nonzero |entry| in the trailing block.
      std::size_t pr = nr, pc = nc;
      for (std::size_t r = t; r < nr; ++r) {
        for (std::size_t c = t; c < nc; ++c) {
          if (a[r][c] != 0 && (pr == nr || abs_int(a[r][c]) < abs_int(a[pr][pc]))) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == nr) return out; // trailing block is zero
      std::swap(a[t], a[pr]);
      if (pc != t) {
        for (auto &row : a) std::swap(row[t], row[pc]);
      }
      const Integer p = a[t][t];
      bool clean = true;
      for (std::size_t r = t + 1; r < nr; ++r) {
        Integer q = a[r][t] / p;
        for (std::size_t c = t; c < nc; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        Integer q = a[t][c] / p;
        for (std::size_t r = t; r < nr; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold a non-divisible row into the pivot row and retry.
      bool divides = true;
      for (std::size_t r = t + 1; r < nr && divides; ++r) {
        for (std::size_t c = t + 1; c < nc; ++c) {
          if (a[r][c] % p != 0) {
            for (std::size_t k = t; k < nc; ++k) a[t][k] += a[r][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    out.rank += 1;
    out.factors.push_back(abs_int(a[t][t]).convert_to<std::int64_t>());
  }
  return out;
}

} // namespace twistflag

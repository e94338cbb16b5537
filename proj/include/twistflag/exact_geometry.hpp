#pragma once

// Exact rational geometry in the plane: cone membership, apex functionals,
// unimodularity and Smith invariant factors of small integer matrices.
// Nothing in here touches floating point.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "twistflag/errors.hpp"

// Boost 1.74's mixed rational/integer operator== is ambiguous with the C++20
// reversed candidate and recurses forever. Exact non-template overloads win.
namespace boost {
#define TWISTFLAG_RATIONAL_EQ(T)                                                                     \
  inline bool operator==(const rational<multiprecision::checked_int128_t> &a, T b) {                 \
    return a.denominator() == 1 && a.numerator() == b;                                               \
  }
TWISTFLAG_RATIONAL_EQ(int)
TWISTFLAG_RATIONAL_EQ(long)
TWISTFLAG_RATIONAL_EQ(long long)
#undef TWISTFLAG_RATIONAL_EQ
} // namespace boost

namespace twistflag {

/// Overflow-checked integer; arithmetic past 127 bits throws std::overflow_error.
using Integer = boost::multiprecision::checked_int128_t;
/// Exact rational in lowest terms with positive denominator.
using Rational = boost::rational<Integer>;

std::string to_string(const Rational &q);
/// Parses "n", "-n" or "p/q".
Rational parse_rational(const std::string &text);
double to_double(const Rational &q);
bool is_integer(const Rational &q);

struct Rat2 {
  Rational x{0};
  Rational y{0};

  Rat2() = default;
  Rat2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  Rat2(std::int64_t x_, std::int64_t y_) : x(Integer(x_)), y(Integer(y_)) {}

  bool is_zero() const { return x == 0 && y == 0; }
  bool is_integral() const { return is_integer(x) && is_integer(y); }

  friend bool operator==(const Rat2 &a, const Rat2 &b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Rat2 &a, const Rat2 &b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
  friend Rat2 operator+(const Rat2 &a, const Rat2 &b) { return {a.x + b.x, a.y + b.y}; }
  friend Rat2 operator-(const Rat2 &a, const Rat2 &b) { return {a.x - b.x, a.y - b.y}; }
  friend Rat2 operator-(const Rat2 &a) { return {-a.x, -a.y}; }
  friend Rat2 operator*(const Rational &s, const Rat2 &a) { return {s * a.x, s * a.y}; }
  Rat2 &operator+=(const Rat2 &o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

std::ostream &operator<<(std::ostream &os, const Rat2 &v);

/// a.x*b.y - a.y*b.x
Rational cross(const Rat2 &a, const Rat2 &b);
Rational dot(const Rat2 &a, const Rat2 &b);

/// Evaluates a covector (stored as a Rat2) on a vector.
inline Rational apply(const Rat2 &covector, const Rat2 &v) { return dot(covector, v); }

enum class ConeStatus { Outside, OnBoundaryRay, Interior };

std::string to_string(ConeStatus s);

/// Result of a two-generator cone query. When the point is in the cone the
/// coefficients satisfy c = lambda1*g1 + lambda2*g2 with both >= 0.
struct ConeMembership {
  ConeStatus status = ConeStatus::Outside;
  std::optional<std::pair<Rational, Rational>> coefficients;

  bool member() const { return status != ConeStatus::Outside; }
  /// True when both coefficients are present and strictly positive.
  bool strictly_positive() const;
};

ConeMembership in_cone2(const Rat2 &c, const Rat2 &g1, const Rat2 &g2);

struct ConeManyMembership {
  ConeMembership membership;
  /// Indices into the generator list of the witnessing pair (equal for a ray).
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

/// Carathéodory in the plane: c is in cone(gens) iff it is in the cone of
/// some pair. Prefers an interior witness when one exists.
ConeManyMembership in_cone_many(const Rat2 &c, const std::vector<Rat2> &gens);

/// Covector alpha with alpha(g) > 0 for every generator, if the generators
/// lie in an open half-plane. Throws InvalidInput on a zero generator.
std::optional<Rat2> find_apex_functional(const std::vector<Rat2> &gens);

/// Strictly positive a, b with c = a*g1 + b*g2, if any exist. Unlike
/// in_cone2 this also covers dependent generators (lines and rays).
std::optional<std::pair<Rational, Rational>> positive_combination(const Rat2 &c, const Rat2 &g1,
                                                                  const Rat2 &g2);

/// |det(a, b)| == 1. Throws InvalidInput for non-integer entries.
bool is_unimodular_pair(const Rat2 &a, const Rat2 &b);

/// k x 2 integer matrix, row-major.
class IntMat {
public:
  explicit IntMat(std::vector<std::array<std::int64_t, 2>> rows);

  std::size_t rows() const { return rows_.size(); }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const std::vector<std::array<std::int64_t, 2>> &data() const { return rows_; }

private:
  std::vector<std::array<std::int64_t, 2>> rows_;
};

struct SmithResult {
  int rank = 0;
  /// Diagonal entries d1 | d2 | ..., one per unit of rank, all positive.
  std::vector<std::int64_t> factors;
};

SmithResult smith_invariant_factors(const IntMat &m);

/// Converts an integral Rat2 to an int64 pair, throwing InvalidInput otherwise.
std::array<std::int64_t, 2> to_int2(const Rat2 &v);

} // namespace twistflag

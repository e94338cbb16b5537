#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code with the library beyond the WeightSystem / DerivedConeData types.

#include <array>
#include <vector>

#include "twistflag/weight_system.hpp"

namespace oracle {

using I2 = std::array<long long, 2>;

long long cross(const I2 &a, const I2 &b);

/// Closed-cone membership by orientation tests.
bool in_cone(const I2 &c, const I2 &g1, const I2 &g2);

/// Cone condition on integral or rational data (rescaled to integers first).
bool star(const twistflag::DerivedConeData &d);

/// (rank, d1, d2) from gcds of 1x1 and 2x2 minors; d2 = 0 below rank 2.
std::array<long long, 3> smith_by_minors(const std::vector<I2> &rows);

/// Order of {t in (S^1)^2 : t^r = 1 for every row r}, counted over the
/// D-torsion points where D is a nonzero 2x2 minor. Requires rank 2.
long long isotropy_order_by_roots(const std::vector<I2> &rows);

/// Every zero-sum weight system with entries in [-bound, bound] passing star(),
/// sorted.
std::vector<twistflag::WeightSystem> enumerate(int bound);

I2 to_i2(const twistflag::Rat2 &v);

} // namespace oracle

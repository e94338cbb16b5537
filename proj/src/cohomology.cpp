#include "twistflag/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace twistflag {

QSqrtNeg3 operator/(const QSqrtNeg3 &a, const QSqrtNeg3 &b) {
  if (b.is_zero()) throw InvalidInput("division by zero in Q(sqrt(-3))");
  const Rational norm = b.re * b.re + Rational(3) * b.im * b.im;
  const QSqrtNeg3 conj{b.re, -b.im};
  const QSqrtNeg3 num = a * conj;
  return {num.re / norm, num.im / norm};
}

std::string to_string(const QSqrtNeg3 &x) {
  if (x.im == 0) return to_string(x.re);
  std::string s = x.re == 0 ? "" : to_string(x.re) + (x.im > 0 ? "+" : "");
  return s + to_string(x.im) + "*sqrt(-3)";
}

namespace {

bool is_zero(const Rational &x) { return x == 0; }
bool is_zero(const QSqrtNeg3 &x) { return x.is_zero(); }

template <class F>
bool all_zero(const std::vector<F> &v) {
  return std::all_of(v.begin(), v.end(), [](const F &x) { return is_zero(x); });
}

// Monomial x1^a x2^b in the coinvariant ring, reduced with
// x2^2 = -x1 x2 - x1^2 and x1^3 = 0.
using Poly = std::map<std::pair<int, int>, Rational>;

Poly reduce(Poly p) {
  for (;;) {
    auto it = std::find_if(p.begin(), p.end(), [](const auto &kv) {
      return kv.first.first >= 3 || kv.first.second >= 2;
    });
    if (it == p.end()) break;
    auto [a, b] = it->first;
    Rational c = it->second;
    p.erase(it);
    if (a >= 3) continue;
    p[{a + 1, b - 1}] -= c;
    p[{a + 2, b - 2}] -= c;
  }
  for (auto it = p.begin(); it != p.end();) it = (it->second == 0) ? p.erase(it) : std::next(it);
  return p;
}

const std::vector<std::pair<int, int>> &monomials() {
  static const std::vector<std::pair<int, int>> m{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {2, 1}};
  return m;
}

std::size_t monomial_index(std::pair<int, int> e) {
  const auto &m = monomials();
  auto it = std::find(m.begin(), m.end(), e);
  if (it == m.end()) throw InternalInconsistency("unreduced monomial in basic model");
  return static_cast<std::size_t>(it - m.begin());
}

std::string monomial_label(std::pair<int, int> e) {
  if (e.first == 0 && e.second == 0) return "1";
  std::string s;
  if (e.first > 0) s += e.first == 1 ? "x1" : "x1^" + std::to_string(e.first);
  if (e.second > 0) s += e.second == 1 ? "x2" : "x2^" + std::to_string(e.second);
  return s;
}

// Basis of base (x) exterior: (base index, generator mask).
template <class F>
struct DgaBasis {
  const DgaModel<F> &m;
  std::vector<std::pair<std::size_t, unsigned>> elems;
  std::map<std::pair<std::size_t, unsigned>, std::size_t> index;

  explicit DgaBasis(const DgaModel<F> &model) : m(model) {
    const unsigned ng = static_cast<unsigned>(m.generator_bidegree.size());
    for (std::size_t b = 0; b < m.base.size(); ++b) {
      for (unsigned mask = 0; mask < (1u << ng); ++mask) {
        index[{b, mask}] = elems.size();
        elems.emplace_back(b, mask);
      }
    }
  }

  std::size_t size() const { return elems.size(); }

  std::pair<int, int> bidegree(std::size_t k) const {
    auto [b, mask] = elems[k];
    auto bd = m.base.bidegree[b];
    for (std::size_t g = 0; g < m.generator_bidegree.size(); ++g) {
      if (mask & (1u << g)) {
        bd.first += m.generator_bidegree[g].first;
        bd.second += m.generator_bidegree[g].second;
      }
    }
    return bd;
  }

  int degree(std::size_t k) const {
    auto bd = bidegree(k);
    return bd.first + bd.second;
  }

  int exterior_degree(unsigned mask) const {
    int deg = 0;
    for (std::size_t g = 0; g < m.generator_bidegree.size(); ++g)
      if (mask & (1u << g)) deg += m.generator_bidegree[g].first + m.generator_bidegree[g].second;
    return deg;
  }

  // Image of basis element k under d.
  std::vector<F> d(std::size_t k) const {
    std::vector<F> out(size(), F(Rational(0)));
    auto [b, mask] = elems[k];
    const bool base_odd = m.base.degree(b) % 2 != 0;
    int pos = 0;
    for (std::size_t r = 0; r < m.generator_bidegree.size(); ++r) {
      if (!(mask & (1u << r))) continue;
      const bool neg = base_odd != (pos % 2 != 0);
      ++pos;
      const unsigned rest = mask & ~(1u << r);
      // b * d(w_r) in the base, then tensor with the remaining generators.
      const auto &dr = m.d_generator[r];
      for (std::size_t c = 0; c < m.base.size(); ++c) {
        if (is_zero(dr[c])) continue;
        const auto &prod = m.base.mult[b][c];
        for (std::size_t e = 0; e < prod.size(); ++e) {
          if (prod[e] == 0) continue;
          F term = F(prod[e]) * dr[c];
          if (neg) term = -term;
          std::size_t target = index.at({e, rest});
          out[target] = out[target] + term;
        }
      }
    }
    return out;
  }

  // Product of two basis elements.
  std::vector<F> mul(std::size_t i, std::size_t j) const {
    std::vector<F> out(size(), F(Rational(0)));
    auto [b, s] = elems[i];
    auto [c, t] = elems[j];
    if (s & t) return out;
    int inversions = 0;
    for (std::size_t x = 0; x < 32; ++x)
      if (s & (1u << x)) inversions += std::popcount(t & ((1u << x) - 1));
    // Generators have odd degree, so every transposition is a sign.
    bool neg = inversions % 2 != 0;
    if ((exterior_degree(s) % 2 != 0) && (m.base.degree(c) % 2 != 0)) neg = !neg;
    const auto &prod = m.base.mult[b][c];
    for (std::size_t e = 0; e < prod.size(); ++e) {
      if (prod[e] == 0) continue;
      F v(prod[e]);
      out[index.at({e, s | t})] = neg ? -v : v;
    }
    return out;
  }
};

template <class F>
std::vector<F> apply_matrix(const std::vector<std::vector<F>> &cols, const std::vector<F> &v) {
  std::vector<F> out(cols.size(), F(Rational(0)));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (is_zero(v[k])) continue;
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = out[r] + v[k] * cols[k][r];
  }
  return out;
}

template <class F>
int rank_of(std::vector<std::vector<F>> rows) {
  int rank = 0;
  const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && is_zero(rows[piv][c])) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (is_zero(rows[r][c])) continue;
      F f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < ncols; ++k) rows[r][k] = rows[r][k] - f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

} // namespace

int GradedAlgebra::top_degree() const {
  int top = 0;
  for (std::size_t i = 0; i < size(); ++i) top = std::max(top, degree(i));
  return top;
}

std::vector<int> GradedAlgebra::graded_dimensions() const {
  std::vector<int> dims(top_degree() + 1, 0);
  for (std::size_t i = 0; i < size(); ++i) ++dims[degree(i)];
  return dims;
}

std::vector<Rational> GradedAlgebra::basis_vector(std::size_t i) const {
  std::vector<Rational> v(size(), Rational(0));
  v.at(i) = 1;
  return v;
}

std::vector<Rational> GradedAlgebra::multiply(const std::vector<Rational> &a, const std::vector<Rational> &b) const {
  if (a.size() != size() || b.size() != size()) throw InvalidInput("coordinate vector has wrong length");
  std::vector<Rational> out(size(), Rational(0));
  for (std::size_t i = 0; i < size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < size(); ++j) {
      if (b[j] == 0) continue;
      for (std::size_t k = 0; k < size(); ++k) out[k] += a[i] * b[j] * mult[i][j][k];
    }
  }
  return out;
}

std::string GradedAlgebra::check_associativity() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      for (std::size_t k = 0; k < size(); ++k) {
        auto l = multiply(multiply(basis_vector(i), basis_vector(j)), basis_vector(k));
        auto r = multiply(basis_vector(i), multiply(basis_vector(j), basis_vector(k)));
        if (l != r) return "(" + labels[i] + "*" + labels[j] + ")*" + labels[k] + " is not associative";
      }
  return "";
}

std::string GradedAlgebra::check_graded_commutativity() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) {
      const bool neg = degree(i) % 2 != 0 && degree(j) % 2 != 0;
      for (std::size_t k = 0; k < size(); ++k) {
        Rational expect = neg ? -mult[j][i][k] : mult[j][i][k];
        if (mult[i][j][k] != expect) return labels[i] + "*" + labels[j] + " is not graded commutative";
      }
    }
  return "";
}

std::string GradedAlgebra::check_unit() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (mult[0][i] != basis_vector(i) || mult[i][0] != basis_vector(i)) return "1*" + labels[i] + " != " + labels[i];
  }
  return "";
}

GradedAlgebra basic_model(bool hodge) {
  GradedAlgebra g;
  const auto &mons = monomials();
  for (auto e : mons) {
    g.labels.push_back(monomial_label(e));
    const int n = e.first + e.second;
    g.bidegree.emplace_back(hodge ? n : 2 * n, hodge ? n : 0);
  }
  g.mult.assign(mons.size(), std::vector<std::vector<Rational>>(mons.size(), std::vector<Rational>(mons.size(), Rational(0))));
  for (std::size_t i = 0; i < mons.size(); ++i) {
    for (std::size_t j = 0; j < mons.size(); ++j) {
      Poly p{{{mons[i].first + mons[j].first, mons[i].second + mons[j].second}, Rational(1)}};
      for (const auto &[e, c] : reduce(p)) g.mult[i][j][monomial_index(e)] = c;
    }
  }
  return g;
}

std::vector<Rational> lefschetz_class() {
  // x3 = -x1 - x2, so x1 - x3 = 2 x1 + x2.
  std::vector<Rational> v(monomials().size(), Rational(0));
  v[monomial_index({1, 0})] = 2;
  v[monomial_index({0, 1})] = 1;
  return v;
}

std::array<std::vector<Rational>, 2> degree_two_basis() {
  const GradedAlgebra g = basic_model();
  return {g.basis_vector(monomial_index({1, 0})), g.basis_vector(monomial_index({0, 1}))};
}

template <class F>
std::string check_dga(const DgaModel<F> &m) {
  if (m.d_generator.size() != m.generator_bidegree.size()) return "one differential per generator required";
  for (const auto &dg : m.d_generator)
    if (dg.size() != m.base.size()) return "differential of a generator has wrong length";
  const DgaBasis<F> basis(m);
  std::vector<std::vector<F>> dcols;
  for (std::size_t k = 0; k < basis.size(); ++k) dcols.push_back(basis.d(k));

  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto bd = basis.bidegree(k);
    for (std::size_t r = 0; r < basis.size(); ++r) {
      if (is_zero(dcols[k][r])) continue;
      auto target = basis.bidegree(r);
      if (target.first != bd.first + m.d_bidegree.first || target.second != bd.second + m.d_bidegree.second)
        return "d is not homogeneous of the declared bidegree";
    }
    if (!all_zero(apply_matrix(dcols, dcols[k]))) return "d^2 != 0";
  }

  for (std::size_t i = 0; i < basis.size(); ++i) {
    const bool odd = basis.degree(i) % 2 != 0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto lhs = apply_matrix(dcols, basis.mul(i, j));
      std::vector<F> rhs(basis.size(), F(Rational(0)));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!is_zero(dcols[i][k])) {
          auto t = basis.mul(k, j);
          for (std::size_t e = 0; e < t.size(); ++e) rhs[e] = rhs[e] + dcols[i][k] * t[e];
        }
        if (!is_zero(dcols[j][k])) {
          auto t = basis.mul(i, k);
          for (std::size_t e = 0; e < t.size(); ++e) {
            F v = dcols[j][k] * t[e];
            rhs[e] = odd ? rhs[e] - v : rhs[e] + v;
          }
        }
      }
      if (lhs != rhs) return "Leibniz rule fails";
    }
  }
  return "";
}

template <class F>
std::map<std::pair<int, int>, int> bigraded_cohomology(const DgaModel<F> &m) {
  if (std::string err = check_dga(m); !err.empty()) throw InvalidInput(err);
  const DgaBasis<F> basis(m);

  std::map<std::pair<int, int>, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < basis.size(); ++k) groups[basis.bidegree(k)].push_back(k);

  // rank of d leaving each bidegree
  std::map<std::pair<int, int>, int> rank_out;
  for (const auto &[bd, members] : groups) {
    std::pair<int, int> tgt{bd.first + m.d_bidegree.first, bd.second + m.d_bidegree.second};
    auto it = groups.find(tgt);
    if (it == groups.end()) {
      rank_out[bd] = 0;
      continue;
    }
    std::vector<std::vector<F>> rows;
    for (std::size_t k : members) {
      auto img = basis.d(k);
      std::vector<F> row;
      for (std::size_t r : it->second) row.push_back(img[r]);
      rows.push_back(std::move(row));
    }
    rank_out[bd] = rank_of(std::move(rows));
  }

  std::map<std::pair<int, int>, int> h;
  for (const auto &[bd, members] : groups) {
    std::pair<int, int> src{bd.first - m.d_bidegree.first, bd.second - m.d_bidegree.second};
    const int in = rank_out.count(src) ? rank_out[src] : 0;
    h[bd] = static_cast<int>(members.size()) - rank_out[bd] - in;
  }
  return h;
}

template <class F>
int euler_characteristic(const DgaModel<F> &m) {
  const DgaBasis<F> basis(m);
  int chi = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) chi += basis.degree(k) % 2 == 0 ? 1 : -1;
  return chi;
}

template std::map<std::pair<int, int>, int> bigraded_cohomology(const DgaModel<Rational> &);
template std::map<std::pair<int, int>, int> bigraded_cohomology(const DgaModel<QSqrtNeg3> &);
template std::string check_dga(const DgaModel<Rational> &);
template std::string check_dga(const DgaModel<QSqrtNeg3> &);
template int euler_characteristic(const DgaModel<Rational> &);
template int euler_characteristic(const DgaModel<QSqrtNeg3> &);

std::vector<int> dga_cohomology(const RationalDga &m) {
  auto h = bigraded_cohomology(m);
  int top = 0;
  for (const auto &[bd, dim] : h) top = std::max(top, bd.first + bd.second);
  std::vector<int> betti(top + 1, 0);
  for (const auto &[bd, dim] : h) betti[bd.first + bd.second] += dim;
  return betti;
}

RationalDga derham_model(const std::vector<Rational> &dw1, const std::vector<Rational> &dw2) {
  RationalDga m;
  m.base = basic_model(false);
  m.generator_bidegree = {{1, 0}, {1, 0}};
  m.d_generator = {dw1, dw2};
  m.d_bidegree = {1, 0};
  return m;
}

QSqrtNeg3 beta_multiplication_determinant(const Beta &beta) {
  // On (x1^2, x1x2): x1 * (b1 x1 + b2 x2) = b1 x1^2 + b2 x1x2 and
  // x2 * (b1 x1 + b2 x2) = -b2 x1^2 + (b1 - b2) x1x2.
  const auto &[b1, b2] = beta;
  return b1 * (b1 - b2) + b2 * b2;
}

Beta generic_beta() { return {QSqrtNeg3(Rational(1)), QSqrtNeg3(Rational(0))}; }

Beta degenerate_beta() {
  return {QSqrtNeg3(Rational(1, 2), Rational(1, 2)), QSqrtNeg3(Rational(1))};
}

HodgeDga hodge_dga(const Beta &beta) {
  HodgeDga m;
  m.base = basic_model(true);
  m.generator_bidegree = {{1, 0}, {0, 1}};
  std::vector<QSqrtNeg3> dw(m.base.size(), QSqrtNeg3(Rational(0)));
  dw[monomial_index({1, 0})] = beta[0];
  dw[monomial_index({0, 1})] = beta[1];
  m.d_generator = {dw, std::vector<QSqrtNeg3>(m.base.size(), QSqrtNeg3(Rational(0)))};
  m.d_bidegree = {0, 1};
  return m;
}

const std::map<std::pair<int, int>, int> &fixed_hodge_entries() {
  static const std::map<std::pair<int, int>, int> fixed = [] {
    std::map<std::pair<int, int>, int> f;
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; q <= 4; ++q)
        if (!(p == 2 && q >= 1 && q <= 3)) f[{p, q}] = 0;
    for (auto e : {std::pair{0, 0}, {0, 1}, {1, 1}, {1, 2}, {3, 2}, {3, 3}, {4, 3}, {4, 4}}) f[e] = 1;
    return f;
  }();
  return fixed;
}

HodgeTable hodge_model(const Beta &beta) {
  if (beta[0].is_zero() && beta[1].is_zero()) throw InvalidInput("beta must be nonzero");
  auto raw = bigraded_cohomology(hodge_dga(beta));
  HodgeTable t;
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) t.h[{p, q}] = raw.count({p, q}) ? raw.at({p, q}) : 0;
  for (const auto &[bd, dim] : raw) {
    if (bd.first > 4 || bd.second > 4 || bd.first < 0 || bd.second < 0) {
      if (dim != 0) throw InternalInconsistency("cohomology outside the 5x5 diamond");
    }
  }
  for (const auto &[bd, dim] : fixed_hodge_entries()) {
    if (t.h[bd] != dim) {
      std::ostringstream os;
      os << "h^{" << bd.first << "," << bd.second << "} = " << t.h[bd] << ", expected " << dim;
      throw InternalInconsistency(os.str());
    }
  }
  t.branch = {t.h[{2, 1}], t.h[{2, 2}], t.h[{2, 3}]};
  if (t.branch != std::array<int, 3>{0, 0, 0} && t.branch != std::array<int, 3>{1, 2, 1}) {
    throw InternalInconsistency("branch entries outside {(0,0,0), (1,2,1)}");
  }
  for (const auto &[bd, dim] : t.h) {
    if (t.h[{4 - bd.first, 4 - bd.second}] != dim) throw InternalInconsistency("diamond is not symmetric");
  }
  return t;
}

} // namespace twistflag

// Random generators and independent oracles shared by the test binaries.
// Oracles deliberately avoid the library's algorithms: they use int64
// arithmetic, plain Gaussian elimination and brute force.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpd/categories.hpp"
#include "gpd/diagram.hpp"
#include "gpd/grothendieck.hpp"
#include "gpd/homology.hpp"
#include "gpd/module.hpp"

namespace testing {

using gpd::Integer;
using gpd::Rational;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// num/den in lowest terms (mpq_class(long, long) does not reduce).
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// ------------------------------------------------------------------ generators

/// Strictly increasing grid of n values drawn from {0, 1/2, 1, ..., } scaled.
inline std::vector<Rational> random_grid(Rng& rng, std::size_t n, long step_den = 2) {
  std::vector<Rational> out;
  Rational v = frac(uniform(rng, -4, 4), step_den);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(v);
    v += frac(uniform(rng, 1, 4), step_den);
  }
  return out;
}

/// Random divisibility chain of invariant factors with product <= max_order.
inline std::vector<Integer> random_torsion(Rng& rng, long max_order) {
  std::vector<Integer> chain;
  long product = 1;
  long last = 1;
  for (int attempts = 0; attempts < 3; ++attempts) {
    std::vector<long> options;
    for (long d = last == 1 ? 2 : last; d * product <= max_order; d += last) options.push_back(d);
    if (options.empty() || coin(rng, 0.35)) break;
    const long d = options[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(options.size()) - 1))];
    chain.emplace_back(d);
    product *= d;
    last = d;
  }
  return chain;
}

inline gpd::Object random_ab_object(Rng& rng, long max_order = 64, std::size_t max_free = 2) {
  return gpd::Object::abelian_group(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_free))),
                                    random_torsion(rng, max_order));
}

inline gpd::Object random_finab_object(Rng& rng, long max_order = 64) {
  return gpd::Object::finite_abelian_group(random_torsion(rng, max_order));
}

/// Random well-defined homomorphism between Ab/FinAb objects.
inline gpd::Morphism random_homomorphism(Rng& rng, const gpd::Object& src, const gpd::Object& tgt) {
  const auto so = src.generator_orders();
  const auto to = tgt.generator_orders();
  gpd::IntMatrix m(tgt.size(), src.size());
  for (std::size_t r = 0; r < to.size(); ++r) {
    for (std::size_t c = 0; c < so.size(); ++c) {
      if (coin(rng, 0.3)) continue;
      if (to[r] == 0) {
        if (so[c] == 0) m(r, c) = uniform(rng, -3, 3);
        continue;
      }
      // entry * so[c] must vanish mod to[r]
      Integer step = 1;
      if (so[c] != 0) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), to[r].get_mpz_t(), so[c].get_mpz_t());
        step = to[r] / g;
      }
      m(r, c) = step * uniform(rng, 0, 5);
    }
  }
  return gpd::Morphism::homomorphism(src, tgt, m);
}

inline gpd::FieldMatrix random_field_matrix(Rng& rng, const gpd::Field& f, std::size_t rows, std::size_t cols,
                                            double zero_prob = 0.4) {
  gpd::FieldMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (!coin(rng, zero_prob)) m.set(r, c, Rational(uniform(rng, -3, 3)));
  return m;
}

/// Random Vect module over `f` with low-rank-ish maps.
inline gpd::ConstructibleModule random_vect_module(Rng& rng, const gpd::Field& f, std::size_t n, std::size_t max_dim = 4) {
  const auto cat = gpd::CategoryId::vect(f);
  std::vector<gpd::Object> objects{gpd::Object::identity_object(cat)};
  std::vector<gpd::Morphism> maps;
  for (std::size_t k = 0; k < n; ++k) {
    gpd::Object next = gpd::Object::vector_space(f, static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_dim))));
    maps.push_back(gpd::Morphism::linear(objects.back(), next, random_field_matrix(rng, f, next.size(), objects.back().size())));
    objects.push_back(next);
  }
  return gpd::ConstructibleModule(cat, random_grid(rng, n), objects, maps);
}

inline gpd::ConstructibleModule random_abelian_module(Rng& rng, bool finite, std::size_t n, long max_order = 64) {
  const auto cat = finite ? gpd::CategoryId::finab() : gpd::CategoryId::ab();
  std::vector<gpd::Object> objects{gpd::Object::identity_object(cat)};
  std::vector<gpd::Morphism> maps;
  for (std::size_t k = 0; k < n; ++k) {
    gpd::Object next = finite ? random_finab_object(rng, max_order) : random_ab_object(rng, max_order);
    maps.push_back(random_homomorphism(rng, objects.back(), next));
    objects.push_back(next);
  }
  return gpd::ConstructibleModule(cat, random_grid(rng, n), objects, maps);
}

/// Random FinSet module: each stage adds points and may merge.
inline gpd::ConstructibleModule random_finset_module(Rng& rng, std::size_t n) {
  const auto cat = gpd::CategoryId::finset();
  std::vector<gpd::Object> objects{gpd::Object::finite_set(0)};
  std::vector<gpd::Morphism> maps;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t size = static_cast<std::size_t>(uniform(rng, 1, 4));
    gpd::Object next = gpd::Object::finite_set(size);
    std::vector<std::size_t> table;
    for (std::size_t i = 0; i < objects.back().size(); ++i) table.push_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(size) - 1)));
    maps.push_back(gpd::Morphism::set_map(objects.back(), next, table));
    objects.push_back(next);
  }
  return gpd::ConstructibleModule(cat, random_grid(rng, n), objects, maps);
}

/// Random invertible matrix over a field (product of elementary operations).
inline gpd::FieldMatrix random_invertible(Rng& rng, const gpd::Field& f, std::size_t n) {
  gpd::FieldMatrix m = gpd::FieldMatrix::identity(f, n);
  if (n < 2) return m;
  for (int step = 0; step < 6; ++step) {
    const std::size_t a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    std::size_t b = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (b >= a) ++b;
    const Rational factor(uniform(rng, -2, 2));
    for (std::size_t c = 0; c < n; ++c) m.set(a, c, m(a, c) + factor * m(b, c));
  }
  return m;
}

/// Random representation with split characteristic polynomial, plus its
/// Jordan type.
inline std::pair<gpd::Object, std::vector<gpd::JordanBlock>> random_representation(Rng& rng, const gpd::Field& f,
                                                                                   std::size_t max_dim = 4) {
  std::vector<gpd::JordanBlock> blocks;
  std::size_t dim = 0;
  const std::size_t target = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_dim)));
  while (dim < target) {
    const std::size_t size = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(target - dim)));
    blocks.push_back({f.normalize(Rational(uniform(rng, -1, 2))), size});
    dim += size;
  }
  const gpd::FieldMatrix j = gpd::jordan_matrix(f, blocks);
  const gpd::FieldMatrix p = random_invertible(rng, f, dim);
  const gpd::FieldMatrix a = p * j * *gpd::inverse(p);
  std::sort(blocks.begin(), blocks.end());
  return {gpd::Object::representation(a), blocks};
}

inline gpd::GroupElement random_element(Rng& rng, const gpd::GroupTag& tag, const std::vector<gpd::BasisKey>& keys,
                                        long lo = -2, long hi = 3) {
  gpd::GroupElement e(tag);
  for (const auto& k : keys)
    if (coin(rng, 0.5)) e.add(k, uniform(rng, lo, hi));
  return e;
}

inline std::vector<gpd::BasisKey> three_keys() {
  return {gpd::BasisKey::free(), gpd::BasisKey::cyclic(Integer(2), 1), gpd::BasisKey::cyclic(Integer(3), 1)};
}

/// Random grid function over A(Ab) restricted to Z, Z/2, Z/3 (a copy of Z^3).
inline gpd::DiagramGrid random_diagram_grid(Rng& rng, std::size_t n, gpd::DiagramGrid::Role role, double density = 0.5) {
  const auto tag = gpd::GroupTag::of(gpd::CategoryId::ab(), gpd::GroupKind::A);
  gpd::DiagramGrid g(random_grid(rng, n), tag, role);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (coin(rng, density)) g.set(i, j, random_element(rng, tag, three_keys()));
  return g;
}

/// Random B(Vect) diagram with nonnegative multiplicities on integer grid values.
inline gpd::DiagramGrid random_b_diagram(Rng& rng, std::size_t max_points, long span = 6) {
  const auto tag = gpd::GroupTag::of(gpd::CategoryId::vect(gpd::Field::rationals()), gpd::GroupKind::B);
  std::vector<std::pair<long, std::optional<long>>> points;
  const std::size_t count = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_points)));
  std::vector<Rational> values;
  for (std::size_t k = 0; k < count; ++k) {
    const long a = uniform(rng, 0, span - 1);
    std::optional<long> b;
    if (!coin(rng, 0.2)) b = uniform(rng, a + 1, span);
    points.emplace_back(a, b);
    values.emplace_back(a);
    if (b) values.emplace_back(*b);
  }
  values = gpd::sorted_unique(values);
  gpd::DiagramGrid y(values, tag, gpd::DiagramGrid::Role::Diagram);
  auto index = [&](long v) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), Rational(v)) - values.begin());
  };
  for (const auto& [a, b] : points) {
    const std::size_t i = index(a);
    const std::size_t j = b ? index(*b) : values.size();
    gpd::GroupElement e(tag);
    e.add(gpd::BasisKey::line(), 1);
    y.set(i, j, y.at(i, j) + e);
  }
  return y;
}

/// Random filtered complex on up to `max_vertices` vertices: random triangles
/// and edges closed under faces, integer values nondecreasing along faces.
inline gpd::FilteredComplex random_complex(Rng& rng, std::size_t max_vertices = 6, long max_value = 5,
                                           bool tetrahedra = false) {
  const std::size_t nv = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_vertices)));
  std::set<std::vector<std::size_t>> cells;
  for (std::size_t v = 0; v < nv; ++v) cells.insert({v});
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = a + 1; b < nv; ++b)
      if (coin(rng, 0.55)) cells.insert({a, b});
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = a + 1; b < nv; ++b)
      for (std::size_t c = b + 1; c < nv; ++c)
        if (coin(rng, 0.25)) cells.insert({{a, b}, {a, c}, {b, c}, {a, b, c}});
  if (tetrahedra && nv >= 4 && coin(rng, 0.5)) {
    std::vector<std::size_t> t{0, 1, 2, 3};
    for (std::size_t mask = 1; mask < 16; ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t k = 0; k < 4; ++k)
        if (mask >> k & 1) face.push_back(t[k]);
      cells.insert(face);
    }
  }
  std::vector<gpd::Simplex> simplices;
  std::map<std::vector<std::size_t>, Rational> value;
  std::vector<std::vector<std::size_t>> ordered(cells.begin(), cells.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (const auto& s : ordered) {
    Rational v(uniform(rng, 0, max_value));
    if (s.size() > 1) {
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        auto f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
        v = std::max(v, value.at(f));
      }
      if (coin(rng, 0.5)) v += uniform(rng, 0, 1);
    }
    value[s] = v;
    simplices.push_back({s, v});
  }
  return gpd::FilteredComplex(simplices);
}

// --------------------------------------------------------------------- oracles

/// Determinant by Laplace expansion (small matrices only).
inline long long det_small(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    total += (c % 2 == 0 ? 1 : -1) * m[0][c] * det_small(minor);
  }
  return total;
}

/// gcd of all k x k minors.
inline long long minors_gcd(const std::vector<std::vector<long long>>& m, std::size_t k) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  long long g = 0;
  std::vector<std::size_t> rs(k), cs(k);
  std::vector<bool> rmask(rows), cmask(cols);
  std::fill(rmask.begin(), rmask.begin() + static_cast<std::ptrdiff_t>(std::min(k, rows)), true);
  if (k > rows || k > cols) return 0;
  do {
    std::fill(cmask.begin(), cmask.end(), false);
    std::fill(cmask.begin(), cmask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::vector<long long>> sub;
      for (std::size_t r = 0; r < rows; ++r) {
        if (!rmask[r]) continue;
        std::vector<long long> row;
        for (std::size_t c = 0; c < cols; ++c)
          if (cmask[c]) row.push_back(m[r][c]);
        sub.push_back(row);
      }
      g = std::gcd(g, std::llabs(det_small(sub)));
    } while (std::prev_permutation(cmask.begin(), cmask.end()));
  } while (std::prev_permutation(rmask.begin(), rmask.end()));
  return g;
}

/// Rank over F_p (p small) by plain elimination on int64.
inline std::size_t rank_mod_p(std::vector<std::vector<long long>> m, long long p) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (auto& row : m)
    for (auto& v : row) v = ((v % p) + p) % p;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    long long inv = 1;
    for (long long e = p - 2, b = m[rank][c]; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const long long f = m[r][c] * inv % p;
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// Rank over Q by fraction elimination on mpq (independent of the library).
inline std::size_t rank_rational(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Diagonal of a Smith form by naive int64 elimination (entries stay small
/// for the complexes in the tests). Returns the nonzero diagonal.
inline std::vector<long long> smith_diagonal_naive(std::vector<std::vector<long long>> a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<long long> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pick smallest nonzero in the remaining block
    long long best = 0;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (a[r][c] != 0 && (best == 0 || std::llabs(a[r][c]) < best)) best = std::llabs(a[r][c]), br = r, bc = c;
    if (best == 0) break;
    std::swap(a[t], a[br]);
    for (auto& row : a) std::swap(row[t], row[bc]);
    bool clean = true;
    for (std::size_t r = t + 1; r < rows; ++r) {
      const long long q = a[r][t] / a[t][t];
      for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
      if (a[r][t] != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < cols; ++c) {
      const long long q = a[t][c] / a[t][t];
      for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
      if (a[t][c] != 0) clean = false;
    }
    if (!clean) continue;
    // divisibility: fold any entry not divisible by the pivot into row t
    bool divisible = true;
    for (std::size_t r = t + 1; r < rows && divisible; ++r)
      for (std::size_t c = t + 1; c < cols; ++c)
        if (a[r][c] % a[t][t] != 0) {
          for (std::size_t k = t; k < cols; ++k) a[t][k] += a[r][k];
          divisible = false;
          break;
        }
    if (!divisible) continue;
    diag.push_back(std::llabs(a[t][t]));
    ++t;
  }
  return diag;
}

/// H_k(K; Z) at the full complex, by naive SNF: (free rank, torsion > 1).
inline std::pair<std::size_t, std::vector<long long>> integer_homology_naive(const gpd::FilteredComplex& k, std::size_t deg) {
  std::vector<std::size_t> lower, mid, upper;
  for (std::size_t s = 0; s < k.size(); ++s) {
    const std::size_t d = k.simplices()[s].dimension();
    if (deg > 0 && d == deg - 1) lower.push_back(s);
    if (d == deg) mid.push_back(s);
    if (d == deg + 1) upper.push_back(s);
  }
  auto bmat = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    std::vector<std::vector<long long>> m(rows.size(), std::vector<long long>(cols.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto& v = k.simplices()[cols[c]].vertices;
      if (v.size() == 1) continue;  // vertices have no boundary
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        auto f = v;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
        const std::size_t r = static_cast<std::size_t>(std::find(rows.begin(), rows.end(), k.find(f)) - rows.begin());
        m[r][c] = drop % 2 == 0 ? 1 : -1;
      }
    }
    return m;
  };
  const auto lower_diag = smith_diagonal_naive(bmat(lower, mid));
  const auto upper_diag = smith_diagonal_naive(bmat(mid, upper));
  std::vector<long long> torsion;
  for (long long d : upper_diag)
    if (d > 1) torsion.push_back(d);
  return {mid.size() - lower_diag.size() - upper_diag.size(), torsion};
}

/// Classical persistence pairs over F_2 by column reduction of the boundary
/// matrix in filtration order. Returns (dimension, birth, death or nullopt).
struct Bar {
  std::size_t dim;
  Rational birth;
  std::optional<Rational> death;
  bool operator<(const Bar& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (birth != o.birth) return birth < o.birth;
    if (death.has_value() != o.death.has_value()) return death.has_value();
    return death && *death < *o.death;
  }
  bool operator==(const Bar& o) const { return dim == o.dim && birth == o.birth && death == o.death; }
};

inline std::vector<Bar> f2_persistence(const gpd::FilteredComplex& k) {
  std::vector<std::size_t> order(k.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = k.simplices()[a];
    const auto& sb = k.simplices()[b];
    if (sa.value != sb.value) return sa.value < sb.value;
    return sa.dimension() < sb.dimension();
  });
  std::vector<std::size_t> pos(k.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<std::set<std::size_t>> cols(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t f : k.faces(order[i])) cols[i].insert(pos[f]);
  std::map<std::size_t, std::size_t> low_owner;
  std::vector<bool> paired(order.size(), false);
  std::vector<Bar> bars;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    while (!cols[j].empty()) {
      const std::size_t low = *cols[j].rbegin();
      auto it = low_owner.find(low);
      if (it == low_owner.end()) break;
      for (std::size_t x : cols[it->second]) {
        if (!cols[j].erase(x)) cols[j].insert(x);
      }
    }
    if (!cols[j].empty()) {
      const std::size_t low = *cols[j].rbegin();
      low_owner[low] = j;
      paired[low] = paired[j] = true;
      const Rational b = k.simplices()[order[low]].value;
      const Rational d = k.simplices()[order[j]].value;
      if (b != d) bars.push_back({k.simplices()[order[low]].dimension(), b, d});
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (paired[i]) continue;
    bool is_creator = true;
    // unpaired columns that reduced to zero are essential classes
    if (!cols[i].empty()) is_creator = false;
    if (is_creator) bars.push_back({k.simplices()[order[i]].dimension(), k.simplices()[order[i]].value, std::nullopt});
  }
  std::sort(bars.begin(), bars.end());
  return bars;
}

/// Bars read off a B(Vect) diagram (multiplicities expanded).
inline std::vector<Bar> bars_of(const gpd::DiagramGrid& y, std::size_t dim) {
  std::vector<Bar> out;
  for (const auto& [cell, value] : y.entries()) {
    const auto iv = y.interval(cell.first, cell.second);
    for (std::int64_t m = 0; m < value.coefficient(gpd::BasisKey::line()); ++m) out.push_back({dim, iv.lo, iv.hi});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Finite-interval intersection oracle for B(Vect) or B(Ab) classes: dims of
/// subspaces over Q given by spanning columns.
inline std::size_t dim_span(const std::vector<std::vector<Rational>>& cols, std::size_t ambient) {
  std::vector<std::vector<Rational>> rows(ambient, std::vector<Rational>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < ambient; ++r) rows[r][c] = cols[c][r];
  return ambient == 0 ? 0 : rank_rational(rows);
}

}  // namespace testing

namespace testing {

/// Invariant factors of Z^n / Q Z^n for a nonsingular n x n integer matrix Q
/// (n <= 2), by enumerating cosets and counting elements killed by each d.
inline std::vector<long long> coset_invariants(const std::vector<std::vector<long long>>& q) {
  const std::size_t n = q.size();
  const long long det = std::llabs(det_small(q));
  // adjugate for membership: x ∈ Q Z^n  <=>  adj(Q) x ≡ 0 (mod det)
  std::vector<std::vector<long long>> adj(n, std::vector<long long>(n));
  if (n == 1) adj[0][0] = 1;
  else {
    adj[0][0] = q[1][1], adj[0][1] = -q[0][1], adj[1][0] = -q[1][0], adj[1][1] = q[0][0];
  }
  const long long sdet = det_small(q);
  auto in_lattice = [&](const std::vector<long long>& x) {
    for (std::size_t r = 0; r < n; ++r) {
      long long s = 0;
      for (std::size_t c = 0; c < n; ++c) s += adj[r][c] * x[c];
      if (s % sdet != 0) return false;
    }
    return true;
  };
  // the box [0, det)^n contains every coset
  std::vector<std::vector<long long>> reps;
  std::vector<long long> x(n, 0);
  auto same = [&](const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = a[k] - b[k];
    return in_lattice(d);
  };
  for (long long a = 0; a < det; ++a) {
    for (long long b = 0; b < (n == 2 ? det : 1); ++b) {
      x[0] = a;
      if (n == 2) x[1] = b;
      bool seen = false;
      for (const auto& r : reps)
        if (same(r, x)) { seen = true; break; }
      if (!seen) reps.push_back(x);
    }
  }
  const long long order = static_cast<long long>(reps.size());
  auto killed = [&](long long d) {
    long long count = 0;
    for (const auto& r : reps) {
      std::vector<long long> y(n);
      for (std::size_t k = 0; k < n; ++k) y[k] = d * r[k];
      count += in_lattice(y) ? 1 : 0;
    }
    return count;
  };
  std::vector<long long> divisors;
  for (long long d = 1; d <= order; ++d)
    if (order % d == 0) divisors.push_back(d);
  std::vector<long long> profile;
  for (long long d : divisors) profile.push_back(killed(d));
  for (long long d1 : divisors) {
    const long long d2 = order / d1;
    if (d2 % d1 != 0) continue;
    bool match = true;
    for (std::size_t k = 0; k < divisors.size() && match; ++k)
      match = std::gcd(divisors[k], d1) * std::gcd(divisors[k], d2) == profile[k];
    if (match) {
      std::vector<long long> out;
      if (d1 > 1) out.push_back(d1);
      if (d2 > 1) out.push_back(d2);
      return out;
    }
  }
  return {-1};
}

/// Bottleneck distance between two finite-or-infinite bar multisets by
/// brute force over matchings (small inputs only).
inline std::optional<Rational> bottleneck(const std::vector<Bar>& a, const std::vector<Bar>& b) {
  // points may be matched with each other or with the diagonal
  const std::size_t n = a.size(), m = b.size();
  auto half = [](const Bar& x) -> std::optional<Rational> {
    if (!x.death) return std::nullopt;
    return Rational((*x.death - x.birth) / 2);
  };
  auto cost = [](const Bar& x, const Bar& y) -> std::optional<Rational> {
    if (x.death.has_value() != y.death.has_value()) return std::nullopt;
    Rational c = abs(x.birth - y.birth);
    if (x.death) c = std::max(c, Rational(abs(*x.death - *y.death)));
    return c;
  };
  std::optional<Rational> best;
  bool best_set = false;
  std::vector<bool> used(m, false);
  // recursive search: each point of a goes to an unused point of b or the diagonal
  std::function<void(std::size_t, std::optional<Rational>, bool)> go = [&](std::size_t k, std::optional<Rational> worst,
                                                                          bool finite) {
    if (!finite) return;
    if (best_set && best && worst && *worst >= *best) return;
    if (k == n) {
      std::optional<Rational> w = worst;
      for (std::size_t r = 0; r < m; ++r) {
        if (used[r]) continue;
        const auto h = half(b[r]);
        if (!h) return;
        if (!w || *h > *w) w = h;
      }
      if (!w) w = Rational(0);
      if (!best_set || *w < *best) best = w, best_set = true;
      return;
    }
    const auto h = half(a[k]);
    if (h) go(k + 1, (!worst || *h > *worst) ? h : worst, true);
    for (std::size_t r = 0; r < m; ++r) {
      if (used[r]) continue;
      const auto c = cost(a[k], b[r]);
      if (!c) continue;
      used[r] = true;
      go(k + 1, (!worst || *c > *worst) ? c : worst, true);
      used[r] = false;
    }
  };
  go(0, std::nullopt, true);
  if (!best_set) return std::nullopt;
  return best;
}

}  // namespace testing

namespace testing {

/// Invariant factors of a finite abelian group given by its element list
/// (vectors reduced mod `orders`), recovered from the counts
/// #{x : d x = 0} = prod gcd(d, d_i) over all divisors d of the order.
inline std::vector<long long> invariants_from_elements(const std::set<std::vector<long long>>& elements,
                                                       const std::vector<long long>& orders) {
  const long long n = static_cast<long long>(elements.size());
  std::vector<long long> divisors;
  for (long long d = 1; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);
  std::vector<long long> profile;
  for (long long d : divisors) {
    long long count = 0;
    for (const auto& x : elements) {
      bool zero = true;
      for (std::size_t k = 0; k < x.size(); ++k) zero = zero && (d * x[k]) % orders[k] == 0;
      count += zero ? 1 : 0;
    }
    profile.push_back(count);
  }
  std::vector<long long> chain;
  std::optional<std::vector<long long>> found;
  std::function<void(long long, long long)> search = [&](long long remaining, long long last) {
    if (found) return;
    if (remaining == 1) {
      bool match = true;
      for (std::size_t k = 0; k < divisors.size() && match; ++k) {
        long long c = 1;
        for (long long d : chain) c *= std::gcd(divisors[k], d);
        match = c == profile[k];
      }
      if (match) found = chain;
      return;
    }
    for (long long d = last; d <= remaining; d += last) {
      if (remaining % d != 0 || d == 1) continue;
      chain.push_back(d);
      search(remaining / d, d);
      chain.pop_back();
    }
  };
  search(n, 1);
  return found.value_or(std::vector<long long>{-1});
}

/// Image subgroup of a homomorphism between finite abelian groups by brute
/// force enumeration of the source.
inline std::vector<long long> finite_image_invariants(const gpd::Morphism& f) {
  std::vector<long long> so, to;
  for (const auto& o : f.source().generator_orders()) so.push_back(o.get_si());
  for (const auto& o : f.target().generator_orders()) to.push_back(o.get_si());
  std::set<std::vector<long long>> image;
  std::vector<long long> x(so.size(), 0);
  while (true) {
    std::vector<long long> y(to.size(), 0);
    for (std::size_t r = 0; r < to.size(); ++r) {
      long long s = 0;
      for (std::size_t c = 0; c < so.size(); ++c) s += f.integer_matrix()(r, c).get_si() * x[c];
      y[r] = ((s % to[r]) + to[r]) % to[r];
    }
    image.insert(y);
    std::size_t k = 0;
    while (k < x.size() && ++x[k] == so[k]) x[k++] = 0;
    if (k == x.size()) break;
  }
  return invariants_from_elements(image, to);
}

inline std::vector<long long> invariant_factors_of(const gpd::IsoClass& c) {
  // primary parts recombined into invariant factors, for comparison
  std::map<long long, std::vector<long long>> by_prime;
  for (const auto& [key, mult] : c.parts) {
    if (key.kind != gpd::BasisKey::Kind::Cyclic) continue;
    long long q = 1;
    for (unsigned e = 0; e < key.exponent; ++e) q *= key.prime.get_si();
    for (std::size_t m = 0; m < mult; ++m) by_prime[key.prime.get_si()].push_back(q);
  }
  std::size_t len = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    len = std::max(len, powers.size());
  }
  std::vector<long long> out(len, 1);
  for (const auto& [p, powers] : by_prime)
    for (std::size_t k = 0; k < powers.size(); ++k) out[len - 1 - k] *= powers[k];
  return out;
}

}  // namespace testing

#include <doctest.h>

#include "../support.hpp"
#include "gpd/errors.hpp"

using namespace gpd;
using testing::Rng;

namespace {

const Field Q = Field::rationals();

// k on [a, b), zero elsewhere.
ConstructibleModule interval_module(const Rational& a, const Rational& b) {
  const auto cat = CategoryId::vect(Q);
  const Object e = Object::identity_object(cat), k = Object::vector_space(Q, 1);
  return ConstructibleModule(cat, {a, b}, {e, k, e}, {Morphism::zero(e, k), Morphism::zero(k, e)});
}

// e -> Z -> Z/4 -> Z/2 at {1, 2, 3}, quotient maps.
ConstructibleModule torsion_chain() {
  const auto cat = CategoryId::ab();
  const Object e = Object::identity_object(cat), z = Object::abelian_group(1, {}), z4 = Object::abelian_group(0, {4}),
               z2 = Object::abelian_group(0, {2});
  return ConstructibleModule(cat, {1, 2, 3}, {e, z, z4, z2},
                             {Morphism::zero(e, z), Morphism::homomorphism(z, z4, IntMatrix{{1}}),
                              Morphism::homomorphism(z4, z2, IntMatrix{{1}})});
}

IsoClass cls(const CategoryId& c, std::initializer_list<std::pair<BasisKey, std::size_t>> parts) {
  IsoClass out{c, {}};
  for (const auto& [k, m] : parts) out.parts[k] = m;
  return out;
}

ShiftedMapFn zero_map(const ConstructibleModule& f, const ConstructibleModule& g, const Rational& eps) {
  return [&f, &g, eps](const Rational& r) { return Morphism::zero(f.object_at(r), g.object_at(r + eps)); };
}

}  // namespace

TEST_CASE("construction is validated") {
  const auto cat = CategoryId::vect(Q);
  const Object e = Object::identity_object(cat), k = Object::vector_space(Q, 1);
  CHECK_THROWS_AS(ConstructibleModule(cat, {1, 0}, {e, k, e}, {Morphism::zero(e, k), Morphism::zero(k, e)}),
                  ValidationError);
  CHECK_THROWS_AS(ConstructibleModule(cat, {0}, {k, k}, {Morphism::identity(k)}), ValidationError);
  CHECK_THROWS_AS(ConstructibleModule(cat, {0, 1}, {e, k, e}, {Morphism::zero(e, k), Morphism::zero(e, k)}),
                  ValidationError);
}

TEST_CASE("evaluate examples") {
  const ConstructibleModule f = torsion_chain();
  CHECK(f.evaluate(2, 2) == Morphism::identity(f.object_at(2)));
  CHECK(f.evaluate(Rational(5, 2), Rational(11, 4)) == Morphism::identity(f.object_at(Rational(5, 2))));
  CHECK(f.evaluate(0, 3).source().is_identity_object());
  CHECK(f.evaluate(1, 3) == compose(f.maps()[2], f.maps()[1]));
  CHECK_THROWS_AS(f.evaluate(2, 1), ValidationError);
}

TEST_CASE("dX_iso examples") {
  const ConstructibleModule k = interval_module(0, 1);
  CHECK(dX_iso(k, 0, 1) == cls(CategoryId::vect(Q), {{BasisKey::line(), 1}}));
  CHECK(dX_iso(k, 0, 2).is_identity());

  const ConstructibleModule f = torsion_chain();
  CHECK(dX_iso(f, 0, 2) == cls(CategoryId::ab(), {{BasisKey::cyclic(2, 2), 1}}));
  CHECK(dX_iso(f, 0, 3) == cls(CategoryId::ab(), {{BasisKey::cyclic(2, 1), 1}}));
  CHECK_THROWS_AS(dX_iso(f, 2, 2), ValidationError);

  const DiagramGrid xb = dX_B(f);
  const GroupTag ab_b = GroupTag::of(CategoryId::ab(), GroupKind::B);
  GroupElement one(ab_b);
  one.add(BasisKey::free(), 1);
  CHECK(xb.at(0, 1) == one);
  CHECK(xb.at(0, 2).is_zero());

  // two components born at 0 and 1, merged at 2
  const Object p1 = Object::finite_set(1), p2 = Object::finite_set(2), e = Object::finite_set(0);
  const ConstructibleModule tree(CategoryId::finset(), {0, 1, 2}, {e, p1, p2, p1},
                                 {Morphism::set_map(e, p1, {}), Morphism::set_map(p1, p2, {0}),
                                  Morphism::set_map(p2, p1, {0, 0})});
  const DiagramGrid xa = dX_A(tree);
  CHECK(xa.at(1, 2).coefficient(BasisKey::point()) == 2);
  CHECK(xa.at(1, 3).coefficient(BasisKey::point()) == 1);
  CHECK_THROWS_AS(dX_B(tree), NoBGroupError);
}

TEST_CASE("shift examples") {
  const ConstructibleModule k = interval_module(0, 1);
  CHECK(shift(k, 0).critical() == k.critical());
  const ConstructibleModule s = shift(k, Rational(1, 4));
  CHECK(s.critical() == std::vector<Rational>{Rational(-1, 4), Rational(3, 4)});
  CHECK(s.object_at(Rational(-1, 8)).size() == 1);
  CHECK(s.object_at(Rational(3, 4)).size() == 0);
  CHECK(shift(shift(k, Rational(1, 3)), Rational(1, 6)).critical() == shift(k, Rational(1, 2)).critical());
}

TEST_CASE("interleaving examples") {
  const ConstructibleModule f = torsion_chain();
  const InterleavingPair id = make_interleaving(
      f, f, 0, [&](const Rational& r) { return Morphism::identity(f.object_at(r)); },
      [&](const Rational& r) { return Morphism::identity(f.object_at(r)); });
  CHECK(check_interleaving(f, f, id).ok);

  const ConstructibleModule a = interval_module(0, 1), b = interval_module(10, 11);
  const Rational eps(1, 5);
  const InterleavingPair zero = make_interleaving(a, b, eps, zero_map(a, b, eps), zero_map(b, a, eps));
  const InterleavingCheck check = check_interleaving(a, b, zero);
  CHECK_FALSE(check.ok);
  CHECK_FALSE(check.failure.empty());

  // at eps = 1/2 both shift maps vanish, so zero maps interleave
  const Rational half(1, 2);
  CHECK(check_interleaving(a, b, make_interleaving(a, b, half, zero_map(a, b, half), zero_map(b, a, half))).ok);
}

TEST_CASE("shift interleaving holds") {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const ConstructibleModule f = testing::random_abelian_module(rng, false, 4);
    for (const Rational& eps : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3)}) {
      const ConstructibleModule g = shift(f, eps);
      REQUIRE(check_interleaving(f, g, shift_interleaving(f, eps)).ok);
    }
  }
}

TEST_CASE("common refinement preserves evaluation") {
  const ConstructibleModule f = interval_module(1, 3), g = interval_module(2, 4);
  const auto [fr, gr] = common_refinement(f, g);
  CHECK(fr.critical() == std::vector<Rational>{1, 2, 3, 4});
  CHECK(gr.critical() == fr.critical());
  const auto [ff, ff2] = common_refinement(f, f);
  CHECK(ff.critical() == f.critical());

  Rng rng(42);
  const ConstructibleModule h = testing::random_vect_module(rng, Q, 4);
  const ConstructibleModule other = testing::random_vect_module(rng, Q, 3);
  const ConstructibleModule hr = common_refinement(h, other).first;
  for (int trial = 0; trial < 100; ++trial) {
    Rational p = testing::frac(testing::uniform(rng, -12, 20), 2), q = testing::frac(testing::uniform(rng, -12, 20), 2);
    if (q < p) std::swap(p, q);
    REQUIRE(hr.evaluate(p, q).matrix() == h.evaluate(p, q).matrix());
  }
}

TEST_CASE("dX is monotone under the B order") {
  Rng rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const ConstructibleModule f = testing::random_abelian_module(rng, false, 4);
    const DiagramGrid xb = dX_B(f);
    const std::size_t n = f.critical_count();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        for (std::size_t i2 = 0; i2 <= i; ++i2)
          for (std::size_t j2 = j; j2 <= n; ++j2)
            REQUIRE(leq(xb.at(i2, j2), xb.at(i, j)));
  }
}

TEST_CASE("dX is additive over direct sums") {
  Rng rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    const ConstructibleModule f = testing::random_abelian_module(rng, true, 3);
    const ConstructibleModule g = testing::random_abelian_module(rng, true, 3);
    const ConstructibleModule s = direct_sum(f, g);
    const auto [fr, gr] = common_refinement(f, g);
    const std::size_t n = s.critical_count();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        REQUIRE(dX_iso(s, i, j) == dX_iso(fr, i, j) + dX_iso(gr, i, j));
  }
}

TEST_CASE("segment representatives") {
  CHECK(segment_representatives({Rational(0), Rational(2)}) == std::vector<Rational>{-1, 0, 2});
  CHECK(segment_representatives({}) == std::vector<Rational>{0});
}

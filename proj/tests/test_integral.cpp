#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subint/errors.hpp"
#include "subint/integral.hpp"
#include "test_util.hpp"

using namespace subint;
using testutil::Rng;

namespace {

QVec qv(std::initializer_list<Rational> xs) { return QVec(xs); }

Polyhedron interval(const Rational& lo, const Rational& hi) {
  return Polyhedron::box(qv({lo}), qv({hi}));
}

// T = {1, 2}, mu = 1, f1 = |.|, f2 = |. - 1|.
IntegralInstance instance_a() {
  return IntegralInstance::assemble(
      {{"1", "2"}, {1, 1}},
      {PolyhedralConvexFunction::abs_value(),
       PolyhedralConvexFunction::abs_shifted(1)});
}

IntegralInstance random_instance(Rng& rng, int dim, int atoms) {
  DiscreteMeasureSpace space;
  std::vector<PolyhedralConvexFunction> fs;
  for (int t = 0; t < atoms; ++t) {
    space.atoms.push_back(std::to_string(t));
    space.weights.push_back(rng.rational(1, 3, 4));
    std::vector<AffinePiece> pieces;
    for (int i = 0, n = rng.uniform(1, 3); i < n; ++i)
      pieces.push_back({rng.vec(dim, -3, 3, 4), rng.rational(-2, 2, 4)});
    Polyhedron dom = Polyhedron::whole_space(dim);
    if (rng.uniform(0, 2) == 0) {
      // Box containing the origin so intersections stay nonempty.
      QVec lo(dim), hi(dim);
      for (int i = 0; i < dim; ++i) {
        lo[i] = rng.rational(-3, 0, 2);
        hi[i] = rng.rational(0, 3, 2);
      }
      dom = Polyhedron::box(lo, hi);
    }
    fs.emplace_back(std::move(pieces), std::move(dom));
  }
  return IntegralInstance::assemble(std::move(space), std::move(fs));
}

}  // namespace

TEST_CASE("assembly of the two-atom 1-d instance") {
  auto inst = instance_a();
  CHECK(integral_value(inst, qv({0})) == ExtRat(Rational(1)));
  CHECK(value(inst.integral_function(), qv({0})) == ExtRat(Rational(1)));
  // Pointwise evaluation oracle on a grid.
  for (int k = -16; k <= 16; ++k) {
    const Rational y = frac(k, 4);
    const Rational expect =
        Rational(abs(y)) + Rational(abs(y - 1));
    CHECK(value(inst.integral_function(), qv({y})) == ExtRat(expect));
    CHECK(integral_value(inst, qv({y})) == ExtRat(expect));
  }
}

TEST_CASE("single atom assembles to the atom itself") {
  auto f = PolyhedralConvexFunction::abs_shifted(2);
  auto inst = IntegralInstance::assemble({{"only"}, {1}}, {f});
  CHECK(equals(inst.integral_function().epigraph(), f.epigraph()));
}

TEST_CASE("domain intersection can pin a single point") {
  PolyhedralConvexFunction f1({{qv({1}), 0}}, interval(0, 1));
  PolyhedralConvexFunction f2({{qv({-1}), 0}}, interval(1, 2));
  auto inst = IntegralInstance::assemble({{"a", "b"}, {1, 1}}, {f1, f2});
  CHECK(equals(inst.dom(), Polyhedron::point(qv({1}))));

  PolyhedralConvexFunction g2({{qv({-1}), 0}}, interval(2, 3));
  CHECK_THROWS_AS(
      IntegralInstance::assemble({{"a", "b"}, {1, 1}}, {f1, g2}),
      ImproperSum);
}

TEST_CASE("assembly is linear on random rational points") {
  Rng rng(555);
  for (int iter = 0; iter < 8; ++iter) {
    const int dim = rng.uniform(1, 2);
    auto inst = random_instance(rng, dim, rng.uniform(1, 4));
    int finite_seen = 0;
    for (int k = 0; k < 100; ++k) {
      const QVec x = rng.vec(dim, -4, 4, 8);
      ExtRat direct{Rational(0)};
      for (int t = 0; t < inst.num_atoms() && direct.is_finite(); ++t) {
        const ExtRat v = value(inst.integrand(t), x);
        direct = v.is_finite()
                     ? ExtRat(direct.value() + inst.weight(t) * v.value())
                     : ExtRat::plus_inf();
      }
      CHECK(value(inst.integral_function(), x) == direct);
      if (direct.is_finite()) ++finite_seen;
    }
    CHECK(finite_seen > 0);
  }
}

TEST_CASE("aumann integral on the worked instance") {
  auto inst = instance_a();
  SUBCASE("budgeted allocation") {
    ErrorAllocation alloc{{0, Rational(1, 2)}, Rational(1, 2)};
    CHECK(equals(aumann_integral(inst, qv({0}), alloc),
                 interval(-2, Rational(1, 2))));
  }
  SUBCASE("zero allocation gives the exact subdifferential sum") {
    ErrorAllocation alloc{{0, 0}, 0};
    CHECK(equals(aumann_integral(inst, qv({0}), alloc), interval(-2, 0)));
  }
  SUBCASE("single-atom sum is the eps subdifferential itself") {
    auto f = PolyhedralConvexFunction::abs_value();
    auto one = IntegralInstance::assemble({{"only"}, {1}}, {f});
    ErrorAllocation alloc{{Rational(1, 4)}, Rational(1, 4)};
    CHECK(equals(aumann_integral(one, qv({0}), alloc),
                 eps_subdifferential(f, qv({0}), Rational(1, 4)).set));
  }
  SUBCASE("empty summand surfaces as an error") {
    PolyhedralConvexFunction f1({{qv({1}), 0}}, interval(0, 1));
    auto mixed = IntegralInstance::assemble(
        {{"a", "b"}, {1, 1}},
        {PolyhedralConvexFunction::abs_value(), f1});
    ErrorAllocation alloc{{0, 0}, 0};
    // x = 2 is outside dom f2, so I_f(x) = +inf already.
    CHECK_THROWS(aumann_integral(mixed, qv({2}), alloc));
  }
}

TEST_CASE("aumann integral invariances") {
  Rng rng(808);
  for (int iter = 0; iter < 6; ++iter) {
    const int dim = rng.uniform(1, 2);
    const int atoms = rng.uniform(2, 3);
    auto inst = random_instance(rng, dim, atoms);
    QVec x = zero_vec(dim);
    if (!inst.dom().contains(x)) continue;
    ErrorAllocation alloc;
    alloc.budget = 0;
    for (int t = 0; t < atoms; ++t) {
      alloc.ell.push_back(rng.rational(0, 1, 4));
      alloc.budget += inst.weight(t) * alloc.ell[t];
    }
    Polyhedron direct = aumann_integral(inst, x, alloc);

    SUBCASE("") {}
    // Reordering atoms leaves the sum unchanged.
    {
      DiscreteMeasureSpace space;
      std::vector<PolyhedralConvexFunction> fs;
      ErrorAllocation ralloc;
      ralloc.budget = alloc.budget;
      for (int t = atoms - 1; t >= 0; --t) {
        space.atoms.push_back(inst.space().atoms[t]);
        space.weights.push_back(inst.weight(t));
        fs.push_back(inst.integrand(t));
        ralloc.ell.push_back(alloc.ell[t]);
      }
      auto rev = IntegralInstance::assemble(space, fs);
      CHECK(equals(aumann_integral(rev, x, ralloc), direct));
    }
    // Splitting an atom into equal halves with shared budget.
    {
      DiscreteMeasureSpace space = inst.space();
      std::vector<PolyhedralConvexFunction> fs;
      for (int t = 0; t < atoms; ++t) fs.push_back(inst.integrand(t));
      space.atoms.push_back(space.atoms[0] + "'");
      space.weights[0] /= 2;
      space.weights.push_back(space.weights[0]);
      fs.push_back(fs[0]);
      ErrorAllocation salloc = alloc;
      salloc.ell.push_back(alloc.ell[0]);
      auto split = IntegralInstance::assemble(space, fs);
      CHECK(equals(aumann_integral(split, x, salloc), direct));
    }
    // Monotone in the allocation.
    {
      ErrorAllocation bigger = alloc;
      const int t = rng.uniform(0, atoms - 1);
      bigger.ell[t] += rng.rational(0, 1, 4);
      bigger.budget += inst.weight(t) * (bigger.ell[t] - alloc.ell[t]);
      CHECK(subset_of(direct, aumann_integral(inst, x, bigger)));
    }
    // One-sided exactness: the zero-allocation sum sits inside the
    // subdifferential of the assembled sum.
    {
      ErrorAllocation zero{QVec(atoms, Rational(0)), 0};
      Polyhedron lhs = aumann_integral(inst, x, zero);
      Polyhedron target =
          eps_subdifferential(inst.integral_function(), x, 0).set;
      CHECK(subset_of(lhs, target));
    }
  }
}

TEST_CASE("eps normal set of the domain") {
  auto inst = instance_a();
  CHECK(equals(eps_normal_dom(inst, qv({0}), 3),
               Polyhedron::point(zero_vec(1))));

  PolyhedralConvexFunction f1({{qv({1}), 0}}, interval(0, 1));
  auto boxed = IntegralInstance::assemble({{"a"}, {1}}, {f1});
  CHECK(equals(eps_normal_dom(boxed, qv({0}), Rational(1, 4)),
               Polyhedron::from_hrep(1, {{qv({1}), Rational(1, 4)}})));
  CHECK(equals(eps_normal_dom(boxed, qv({Rational(1, 2)}), 0),
               Polyhedron::point(zero_vec(1))));
  CHECK_THROWS_AS(eps_normal_dom(boxed, qv({2}), 0), PointNotInSet);
}

TEST_CASE("indicator augmentation") {
  auto inst = instance_a();
  SUBCASE("full space changes nothing") {
    auto aug = augment_with_indicator(
        inst, SubspaceRestriction{Polyhedron::whole_space(1)});
    CHECK(aug.num_atoms() == 3);
    for (int k = -8; k <= 8; ++k) {
      const QVec x = {frac(k, 4)};
      CHECK(integral_value(aug, x) == integral_value(inst, x));
    }
    CHECK(equals(aug.dom(), inst.dom()));
  }
  SUBCASE("zero subspace pins the domain") {
    auto aug = augment_with_indicator(
        inst, make_subspace(1, {}));
    CHECK(equals(aug.dom(), Polyhedron::point(zero_vec(1))));
  }
  SUBCASE("non-subspace restrictions are rejected") {
    CHECK_THROWS(augment_with_indicator(
        inst, SubspaceRestriction{interval(0, 1)}));
  }
}

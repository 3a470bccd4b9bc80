#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "starlim/filters.hpp"

using namespace starlim;

TEST_CASE("generated membership from a finite basis") {
  FilterBasis nested({NatSet::tail(3), NatSet::tail(7)});
  CHECK(nested.generated_member(NatSet::tail(5)));  // tail(7) lies inside tail(5)
  FilterBasis evens({NatSet::evens()});
  CHECK(evens.generated_member(NatSet::all()));
  FilterBasis mixed({NatSet::evens(), NatSet::tail(10)});
  CHECK(!mixed.generated_member(NatSet::odds()));
  CHECK(mixed.generated_member(NatSet::evens()));
}

TEST_CASE("empty basis intersections are rejected at construction") {
  CHECK_THROWS_AS(FilterBasis({NatSet::evens(), NatSet::odds()}), EmptyBasisIntersection);
  CHECK_THROWS_AS(FilterBasis(std::vector<NatSet>{}), EmptyBasisIntersection);
  // a finite but nonempty intersection is fine
  FilterBasis ok({NatSet::finite_set({3, 5}), NatSet::finite_set({5, 9})});
  CHECK(ok.generated_member(NatSet::finite_set({5})));
}

TEST_CASE("generated filter laws") {
  oracles::Rng rng(301);
  for (int i = 0; i < 200; ++i) {
    NatSet a = oracles::random_cofinite(rng);
    NatSet b = oracles::random_cofinite(rng);
    FilterBasis g({a, b});
    NatSet meet = a.intersect(b);
    CHECK(g.generated_member(meet));
    CHECK(g.generated_member(a));
    CHECK(g.generated_member(meet.unite(oracles::random_natset(rng))));
    CHECK(!g.generated_member(NatSet::empty_set()));
  }
}

TEST_CASE("fragment residues: defaults and CRT examples") {
  UltraFragment def;
  for (Nat m : {1, 2, 3, 10, 97}) CHECK(def.residue(m) == 0);

  UltraFragment odd({{2, 1}});
  CHECK(odd.residue(2) == 1);
  CHECK(odd.residue(4) == 1);
  CHECK(odd.residue(6) == 1);

  UltraFragment crt({{2, 1}, {3, 2}});
  CHECK(crt.point() == 5);
  CHECK(crt.residue(6) == 5);
  CHECK(crt.residue(2) == 1);
  CHECK(crt.residue(3) == 2);
}

TEST_CASE("incoherent constraints are rejected") {
  CHECK_THROWS_AS(UltraFragment({{2, 0}, {4, 1}}), IncoherentConstraints);
  CHECK_THROWS_AS(UltraFragment({{2, 3}}), IncoherentConstraints);
  CHECK_THROWS_AS(UltraFragment({{0, 0}}), IncoherentConstraints);
  // consistent overlapping moduli are fine
  UltraFragment ok({{4, 3}, {6, 5}});
  CHECK(ok.residue(12) == 11);
}

TEST_CASE("residue towers are coherent under divisibility") {
  oracles::Rng rng(302);
  for (int i = 0; i < 25; ++i) {
    UltraFragment u = oracles::random_fragment(rng);
    for (Nat m = 1; m <= 1000; ++m) {
      for (Nat d = 1; d * d <= m; ++d) {
        if (m % d != 0) continue;
        CHECK(u.residue(d) == u.residue(m) % d);
        CHECK(u.residue(m / d) == u.residue(m) % (m / d));
      }
    }
  }
}

TEST_CASE("fragment text form") {
  UltraFragment u = UltraFragment::parse("2:1,3:2");
  CHECK(u.residue(6) == 5);
  CHECK(u.to_text() == "2:1,3:2");
  CHECK(UltraFragment::parse("").point() == 0);
  CHECK_THROWS_AS(UltraFragment::parse("2"), SyntaxError);
  CHECK_THROWS_AS(UltraFragment::parse("2:"), SyntaxError);
}

TEST_CASE("decide: dichotomy, cofinite and finite sets") {
  oracles::Rng rng(303);
  CHECK(UltraFragment().decide(NatSet::evens()));
  CHECK(!UltraFragment().decide(NatSet::odds()));
  for (int i = 0; i < 300; ++i) {
    UltraFragment u = oracles::random_fragment(rng);
    NatSet a = oracles::random_natset(rng);
    CHECK(u.decide(a) != u.decide(a.complement()));
    CHECK(u.decide(NatSet::tail(i % 50)));
    if (!a.is_empty() && a.is_finite()) CHECK(!u.decide(a));
  }
}

TEST_CASE("decide: union lemma and filter laws on the decided family") {
  oracles::Rng rng(304);
  for (int i = 0; i < 300; ++i) {
    UltraFragment u = oracles::random_fragment(rng);
    NatSet a = oracles::random_natset(rng);
    NatSet b = oracles::random_natset(rng);
    if (u.decide(a.unite(b))) CHECK((u.decide(a) || u.decide(b)));
    NatSet disjoint_b = b.difference(a);
    if (u.decide(a.unite(disjoint_b))) {
      CHECK(u.decide(a) != u.decide(disjoint_b));  // exactly one for disjoint sets
    }
    // closed under intersection and superset; empty set never decided in
    if (u.decide(a) && u.decide(b)) CHECK(u.decide(a.intersect(b)));
    if (u.decide(a)) CHECK(u.decide(a.unite(b)));
    CHECK(!u.decide(NatSet::empty_set()));
  }
}

TEST_CASE("measure: characterization and additivity") {
  oracles::Rng rng(305);
  CHECK(UltraFragment().measure(NatSet::all()) == 1);
  CHECK(UltraFragment().measure(NatSet::finite_set({1, 2, 3})) == 0);
  CHECK(UltraFragment().measure(NatSet::empty_set()) == 0);
  for (int i = 0; i < 300; ++i) {
    UltraFragment u = oracles::random_fragment(rng);
    Measure01 mu(u);
    NatSet a = oracles::random_natset(rng);
    NatSet b = oracles::random_natset(rng).difference(a);  // disjoint from a
    CHECK(mu(a) == (u.decide(a) ? 1u : 0u));
    CHECK(mu(a) + mu(a.complement()) == 1);  // lemma (i)
    CHECK(mu(a.unite(b)) == mu(a) + mu(b));  // finite additivity
    if (mu(a) == 1 && mu(b) == 1) CHECK(mu(a.intersect(b)) == 1);  // lemma (ii)
    NatSet sup = a.unite(oracles::random_natset(rng));
    if (mu(a) == 1) CHECK(mu(sup) == 1);  // lemma (iii)
    // evens/odds split under every fragment
    CHECK(mu(NatSet::evens()) + mu(NatSet::odds()) == 1);
  }
}

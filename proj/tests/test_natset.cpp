#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "starlim/natset.hpp"

using namespace starlim;

namespace {

Nat compare_horizon(const NatSet& a, const NatSet& b) {
  return std::max(a.threshold(), b.threshold()) + lcm_nat_checked(a.modulus(), b.modulus(), NatSet::kMaxModulus);
}

}  // namespace

TEST_CASE("normalize collapses full residue sets") {
  NatSet s = NatSet::from_parts(0, 2, {true, true});
  CHECK(s.threshold() == 0);
  CHECK(s.modulus() == 1);
  CHECK(s == NatSet::all());
}

TEST_CASE("normalize finds the minimal period") {
  NatSet s = NatSet::from_parts(0, 4, {true, false, true, false});
  CHECK(s.modulus() == 2);
  CHECK(s == NatSet::evens());
}

TEST_CASE("normalize agrees with the raw description pointwise") {
  // oracle: compare membership of the raw description against the canonical
  // form on [0, threshold + 2*lcm)
  oracles::Rng rng(201);
  for (int i = 0; i < 400; ++i) {
    oracles::RawSet raw = oracles::random_raw_set(rng);
    NatSet s = NatSet::from_parts(raw.threshold, raw.modulus, raw.residues, raw.exceptions);
    Nat horizon = raw.threshold + 2 * raw.modulus + 4;
    for (Nat n = 0; n < horizon; ++n) CHECK(s.member(n) == oracles::raw_member(raw, n));
    // canonicality: threshold minimal, no redundant exceptions
    if (s.threshold() > 0) {
      Nat last = s.threshold() - 1;
      CHECK(s.member(last) != s.residues()[last % s.modulus()]);
    }
    for (const auto& [idx, flag] : s.exceptions()) CHECK(flag != s.residues()[idx % s.modulus()]);
  }
}

TEST_CASE("normalize keeps an explicitly described prefix") {
  // evens tail from 5 with 0..4 all members
  NatSet s = NatSet::from_parts(5, 2, {true, false},
                                {{1, true}, {3, true}});
  for (Nat n = 0; n <= 4; ++n) CHECK(s.member(n));
  CHECK(s.member(6));
  CHECK(!s.member(5));
  CHECK(!s.member(7));
  CHECK(s.threshold() == 4);  // member(4) matches the tail rule already
}

TEST_CASE("complement") {
  CHECK(NatSet::evens().complement() == NatSet::odds());
  CHECK(NatSet::all().complement() == NatSet::empty_set());
  CHECK(NatSet::tail(7).complement() == NatSet::finite_set({0, 1, 2, 3, 4, 5, 6}));
  oracles::Rng rng(202);
  for (int i = 0; i < 200; ++i) {
    NatSet a = oracles::random_natset(rng);
    CHECK(a.complement().complement() == a);
    for (Nat n = 0; n < a.threshold() + a.modulus() + 2; ++n)
      CHECK(a.complement().member(n) == !a.member(n));
  }
}

TEST_CASE("intersection examples") {
  CHECK(NatSet::evens().intersect(NatSet::odds()) == NatSet::empty_set());
  CHECK(NatSet::tail(3).intersect(NatSet::tail(9)) == NatSet::tail(9));
  // oracle: pointwise on [0, 12)
  NatSet mod2 = NatSet::residue_class(2, 0);
  NatSet mod3 = NatSet::residue_class(3, 0);
  NatSet meet = mod2.intersect(mod3);
  for (Nat n = 0; n < 12; ++n) CHECK(meet.member(n) == (n % 6 == 0));
  CHECK(meet == NatSet::residue_class(6, 0));
  CHECK(lcm_nat_checked(mod2.modulus(), mod3.modulus(), NatSet::kMaxModulus) % meet.modulus() == 0);
}

TEST_CASE("boolean algebra laws against the pointwise oracle") {
  oracles::Rng rng(203);
  for (int i = 0; i < 1000; ++i) {
    NatSet a = oracles::random_natset(rng);
    NatSet b = oracles::random_natset(rng);
    NatSet c = oracles::random_natset(rng);
    // pointwise correctness of each operation
    Nat horizon = compare_horizon(a, b) + 2;
    for (Nat n = 0; n < horizon; ++n) {
      CHECK(a.intersect(b).member(n) == (a.member(n) && b.member(n)));
      CHECK(a.unite(b).member(n) == (a.member(n) || b.member(n)));
      CHECK(a.difference(b).member(n) == (a.member(n) && !b.member(n)));
    }
    // algebraic laws on canonical forms
    CHECK(a.intersect(b) == b.intersect(a));
    CHECK(a.unite(b) == b.unite(a));
    CHECK(a.intersect(b.intersect(c)) == a.intersect(b).intersect(c));
    CHECK(a.unite(b.unite(c)) == a.unite(b).unite(c));
    CHECK(a.intersect(b.unite(c)) == a.intersect(b).unite(a.intersect(c)));
    CHECK(a.unite(b.intersect(c)) == a.unite(b).intersect(a.unite(c)));
    CHECK(a.intersect(b).complement() == a.complement().unite(b.complement()));
    CHECK(a.unite(b).complement() == a.complement().intersect(b.complement()));
  }
}

TEST_CASE("set equality is decidable at the lcm horizon") {
  oracles::Rng rng(204);
  for (int i = 0; i < 300; ++i) {
    NatSet a = oracles::random_natset(rng);
    // half the time, build b as a re-presentation of a (same set, doubled
    // modulus, padded threshold); otherwise an independent random set
    NatSet b = a;
    if (i % 2 == 0) {
      std::vector<bool> doubled(a.modulus() * 2);
      for (Nat r = 0; r < doubled.size(); ++r) doubled[r] = a.residues()[r % a.modulus()];
      std::vector<std::pair<Nat, bool>> exc;
      Nat t = a.threshold() + 3;
      for (Nat n = 0; n < t; ++n)
        if (a.member(n) != doubled[n % doubled.size()]) exc.emplace_back(n, a.member(n));
      b = NatSet::from_parts(t, doubled.size(), doubled, exc);
    } else {
      b = oracles::random_natset(rng);
    }
    bool pointwise = true;
    for (Nat n = 0; n < compare_horizon(a, b); ++n)
      if (a.member(n) != b.member(n)) pointwise = false;
    CHECK((a == b) == pointwise);
  }
}

TEST_CASE("cofiniteness and the Frechet witness") {
  for (Nat nu : {0, 1, 5, 17}) {
    NatSet t = NatSet::tail(nu);
    CHECK(t.is_cofinite());
    CHECK(*t.frechet_witness() == nu);
  }
  CHECK(!NatSet::evens().is_cofinite());
  NatSet holes = NatSet::all().difference(NatSet::finite_set({4, 10}));
  CHECK(holes.is_cofinite());
  CHECK(*holes.frechet_witness() == 11);
  CHECK(!NatSet::odds().frechet_witness().has_value());
}

TEST_CASE("membership, finiteness, emptiness") {
  CHECK(NatSet::evens().member(6));
  CHECK(!NatSet::evens().member(7));
  NatSet fin = NatSet::finite_set({0, 1, 2, 3, 4, 5, 6});
  CHECK(fin.is_finite());
  CHECK(!fin.is_empty());
  CHECK(fin.finite_size() == 7);
  CHECK(NatSet::empty_set().is_empty());
  CHECK(!NatSet::tail(3).is_finite());
  // two presentations of the evens normalize identically
  NatSet e1 = NatSet::from_parts(0, 4, {true, false, true, false});
  NatSet e2 = NatSet::from_parts(2, 2, {true, false});
  CHECK(e1 == e2);
  Nat horizon = compare_horizon(e1, e2);
  for (Nat n = 0; n < horizon; ++n) CHECK(e1.member(n) == e2.member(n));
}

TEST_CASE("Frechet filter axioms on the representable algebra") {
  oracles::Rng rng(205);
  // (i) the empty set is not cofinite
  CHECK(!NatSet::empty_set().is_cofinite());
  for (int i = 0; i < 300; ++i) {
    // (ii) closed under intersection
    NatSet a = oracles::random_cofinite(rng);
    NatSet b = oracles::random_cofinite(rng);
    CHECK(a.is_cofinite());
    CHECK(b.is_cofinite());
    CHECK(a.intersect(b).is_cofinite());
    // (iii) closed under superset
    NatSet c = a.unite(oracles::random_natset(rng));
    CHECK(a.subset_of(c));
    CHECK(c.is_cofinite());
  }
  // (iv) testable form of "the total intersection is empty"
  for (Nat a = 0; a <= 100; ++a) {
    NatSet t = NatSet::tail(a + 1);
    CHECK(t.is_cofinite());
    CHECK(!t.member(a));
  }
}

TEST_CASE("subset via difference") {
  oracles::Rng rng(206);
  for (int i = 0; i < 200; ++i) {
    NatSet a = oracles::random_natset(rng);
    NatSet b = oracles::random_natset(rng);
    bool sub = a.subset_of(b);
    bool oracle = true;
    for (Nat n = 0; n < compare_horizon(a, b) + 2 && oracle; ++n)
      if (a.member(n) && !b.member(n)) oracle = false;
    CHECK(sub == oracle);
    CHECK(a.intersect(b).subset_of(a));
    CHECK(a.subset_of(a.unite(b)));
  }
}

TEST_CASE("text form round trip") {
  oracles::Rng rng(207);
  for (int i = 0; i < 300; ++i) {
    NatSet a = oracles::random_natset(rng);
    CHECK(NatSet::parse_text(a.to_text()) == a);
  }
  NatSet s = NatSet::parse_text("{T=5; mod=2; res=0; exc=+1,-3}");
  CHECK(s.member(1));
  CHECK(!s.member(3));
  CHECK(s.member(0));
  CHECK(s.member(6));
  CHECK(!s.member(5));
  CHECK_THROWS_AS(NatSet::parse_text("{T=1; mod=0; res=}"), SyntaxError);
  CHECK_THROWS_AS(NatSet::parse_text("{T=1; mod=2; res=5}"), SyntaxError);
  CHECK_THROWS_AS(NatSet::parse_text("junk"), SyntaxError);
}

TEST_CASE("the evens-below-threshold presentation from the description") {
  // raw: threshold 5, evens tail, all five indices below forced in
  std::vector<std::pair<Nat, bool>> force_in;
  for (Nat i = 0; i < 5; ++i) force_in.emplace_back(i, true);
  NatSet s = NatSet::from_parts(5, 2, {true, false}, force_in);
  for (Nat n = 0; n <= 4; ++n) CHECK(s.member(n));
  CHECK(s.member(6));
  CHECK(!s.member(5));
  // the canonical scan keeps only the overrides that differ from the rule
  CHECK(s.threshold() == 4);
  auto exc = s.exceptions();
  REQUIRE(exc.size() == 2);
  CHECK(exc[0] == std::make_pair(Nat(1), true));
  CHECK(exc[1] == std::make_pair(Nat(3), true));
}

TEST_CASE("modulus guard") {
  NatSet a = NatSet::residue_class((Nat(1) << 19) - 1, 0);
  NatSet b = NatSet::residue_class((Nat(1) << 19) - 63, 0);
  CHECK_THROWS_AS(a.intersect(b), ModulusOverflow);
  CHECK_THROWS_AS(NatSet::from_parts(0, 0, {}), ModulusOverflow);
}

#include <catch_amalgamated.hpp>

#include <algorithm>

#include "starlim/models.hpp"

using namespace starlim;
using namespace starlim::models;

TEST_CASE("filter counts match the principal-filter census") {
  // oracle: on a finite universe the filters are exactly the principal
  // filters over nonempty bases, so there are 2^k - 1 of them
  CHECK(enumerate_filters(1).size() == 1);
  CHECK(enumerate_filters(2).size() == 3);
  CHECK(enumerate_filters(3).size() == 7);
  CHECK(enumerate_filters(4).size() == 15);
  for (unsigned k = 1; k <= 4; ++k) {
    auto filters = enumerate_filters(k);
    for (std::uint32_t base = 1; base <= full_mask(k); ++base) {
      FiniteFamily principal = principal_filter(k, base);
      CHECK(std::find(filters.begin(), filters.end(), principal) != filters.end());
    }
    CHECK(filters.size() == (1u << k) - 1);
  }
  CHECK_THROWS_AS(enumerate_filters(0), UniverseTooLarge);
  CHECK_THROWS_AS(enumerate_filters(5), UniverseTooLarge);
}

TEST_CASE("ultrafilters are the point filters") {
  CHECK(enumerate_ultrafilters(1).size() == 1);
  CHECK(enumerate_ultrafilters(3).size() == 3);
  CHECK(enumerate_ultrafilters(4).size() == 4);
  for (unsigned k = 1; k <= 4; ++k) {
    auto ultras = enumerate_ultrafilters(k);
    CHECK(ultras.size() == k);
    for (unsigned a = 0; a < k; ++a) {
      FiniteFamily point = principal_filter(k, 1u << a);
      CHECK(std::find(ultras.begin(), ultras.end(), point) != ultras.end());
    }
    // the complement dichotomy characterizes exactly these
    for (const auto& f : enumerate_filters(k)) {
      bool dichotomy = true;
      for (std::uint32_t s = 0; s <= full_mask(k); ++s)
        if (!has(f, s) && !has(f, full_mask(k) & ~s)) dichotomy = false;
      CHECK(dichotomy == is_ultrafilter(f));
    }
  }
}

TEST_CASE("every filter extends to an ultrafilter") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (const auto& f : enumerate_filters(k)) {
      auto exts = extend_filter(f);
      CHECK(!exts.empty());
      for (const auto& u : exts) {
        CHECK(is_ultrafilter(u));
        CHECK((f.members & u.members) == f.members);
      }
      if (is_ultrafilter(f)) {
        REQUIRE(exts.size() == 1);
        CHECK(exts[0] == f);
      }
    }
  }
  // the base {0,1} on k=3 extends to the two point filters it covers
  FiniteFamily f = principal_filter(3, 0b011);
  auto exts = extend_filter(f);
  REQUIRE(exts.size() == 2);
  // the trivial filter {universe} extends to all k ultrafilters
  CHECK(extend_filter(principal_filter(3, 0b111)).size() == 3);
  FiniteFamily junk{3, 0b10};  // contains the empty set
  CHECK_THROWS_AS(extend_filter(junk), NotAFilter);
}

TEST_CASE("no finite-universe filter is free") {
  // the total intersection of a filter on a finite universe is never empty,
  // which is why desk-scale ultrafilters are principal
  for (unsigned k = 1; k <= 4; ++k) {
    for (const auto& f : enumerate_filters(k)) {
      std::uint32_t total = full_mask(k);
      for (std::uint32_t s = 0; s <= full_mask(k); ++s)
        if (has(f, s)) total &= s;
      CHECK(total != 0);
    }
  }
}

TEST_CASE("measure checks on every ultrafilter") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (const auto& u : enumerate_ultrafilters(k)) {
      MeasureReport rep = check_measure(u);
      CHECK(rep.all());
    }
    for (const auto& f : enumerate_filters(k)) {
      if (!is_ultrafilter(f)) CHECK_THROWS_AS(check_measure(f), NotUltra);
    }
  }
  // the point filter at 0 on k=3: mu({0,1}) = 1, mu({1,2}) = 0
  FiniteFamily f0 = principal_filter(3, 0b001);
  CHECK(has(f0, 0b011));
  CHECK(!has(f0, 0b110));
  CHECK(check_measure(f0).all());
}

TEST_CASE("union lemma on small set families") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (const auto& u : enumerate_ultrafilters(k)) {
      std::uint32_t full = full_mask(k);
      for (std::uint32_t a = 0; a <= full; ++a) {
        for (std::uint32_t b = 0; b <= full; ++b) {
          if (has(u, a | b)) CHECK((has(u, a) || has(u, b)));
          if ((a & b) == 0 && (a | b) == full) {
            CHECK(has(u, a) != has(u, b));  // exactly one on a disjoint cover
          }
          for (std::uint32_t c = 0; c <= full; ++c) {
            if (has(u, a | b | c)) CHECK((has(u, a) || has(u, b) || has(u, c)));
          }
        }
      }
    }
  }
}

// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <string>

#include "relcoh/errors.hpp"
#include "relcoh/verify.hpp"

using namespace relcoh;
using namespace relcoh::verify;

TEST_SUITE("verify") {
  TEST_CASE("tolerance overrides parse") {
    const auto both = ToleranceOverrides::parse("rel=1e-6,abs=2e-9");
    REQUIRE(both.rel);
    REQUIRE(both.abs);
    CHECK(*both.rel == 1e-6);
    CHECK(*both.abs == 2e-9);

    const auto rel_only = ToleranceOverrides::parse("rel=0.5");
    CHECK(rel_only.rel == 0.5);
    CHECK_FALSE(rel_only.abs);

    CHECK_FALSE(ToleranceOverrides::parse("").rel);
    CHECK_THROWS_AS(ToleranceOverrides::parse("rel=-1"), DomainError);
    CHECK_THROWS_AS(ToleranceOverrides::parse("rel=0"), DomainError);
    CHECK_THROWS_AS(ToleranceOverrides::parse("rel=abc"), DomainError);
    CHECK_THROWS_AS(ToleranceOverrides::parse("bound=1"), DomainError);
    CHECK_THROWS_AS(ToleranceOverrides::parse("rel"), DomainError);
  }

  TEST_CASE("unknown suite is rejected") { CHECK_THROWS_AS(run("nope"), DomainError); }

  TEST_CASE("specfun suite passes and renders as TAP") {
    const auto results = run("specfun");
    REQUIRE(results.size() > 5);
    for (const auto& r : results) {
      INFO(r.suite << "/" << r.name << " measured=" << r.measured << " " << r.detail);
      CHECK(r.passed);
    }
    CHECK(all_passed(results));

    const std::string tap = to_tap(results);
    CHECK(tap.rfind("TAP version 13\n1.." + std::to_string(results.size()) + "\n", 0) == 0);
    CHECK(tap.find("ok 1 - specfun/") != std::string::npos);
    CHECK(tap.find("not ok") == std::string::npos);
  }

  TEST_CASE("overrides replace only their own kind") {
    const auto strict = run("specfun", ToleranceOverrides::parse("rel=1e-30"));
    bool rel_failed = false;
    for (const auto& r : strict) {
      if (r.kind == ToleranceKind::relative) {
        CHECK(r.tolerance == 1e-30);
        rel_failed = rel_failed || !r.passed;
      } else {
        CHECK(r.tolerance != 1e-30);
      }
    }
    CHECK(rel_failed);
    CHECK_FALSE(all_passed(strict));
    CHECK(to_tap(strict).find("not ok") != std::string::npos);
  }
}

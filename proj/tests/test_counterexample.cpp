#include <catch_amalgamated.hpp>

#include <chrono>

#include "oracle.hpp"

using namespace nilamalg;

namespace {

  bool passed(CounterexampleReport const& r, std::string const& id) {
    for (auto const& c : r.checks) {
      if (c.id == id) {
        return c.passed;
      }
    }
    FAIL("no sub-check " << id);
    return false;
  }

  SubCheck const& find(CounterexampleReport const& r, std::string const& id) {
    for (auto const& c : r.checks) {
      if (c.id == id) {
        return c;
      }
    }
    throw std::runtime_error("no sub-check " + id);
  }

}  // namespace

TEST_CASE("parameter gate", "[counterexample]") {
  CHECK_THROWS_AS(build_counterexample(1, Int(4)), InvalidArgument);
  CHECK_THROWS_AS(build_counterexample(2, Int(2)), InvalidArgument);
  CHECK_THROWS_AS(build_counterexample(2, Int(5)), InvalidArgument);
  CHECK_THROWS_AS(build_counterexample(3, Int(1)), InvalidArgument);
  CHECK_NOTHROW(build_counterexample(2, Int(6)));
}

TEST_CASE("bundle shape", "[counterexample]") {
  auto c = build_counterexample(2, Int(4));
  CHECK(c.D->order() == Int(64));
  CHECK(c.A->order() == Int(128));
  CHECK(c.B->order() == Int(128));
  CHECK(c.G->order() == Int(256));
  CHECK(to_string(c.a) == "x");
  CHECK(to_string(c.b) == "t*y");

  auto integral = build_counterexample(2, std::nullopt);
  CHECK_FALSE(integral.is_finite());
  CHECK_FALSE(integral.D->order());
  CHECK(integral.A->base_generators()[0].order == 2);
  CHECK(integral.D->base_generators()[0].order == 0);
}

TEST_CASE("integral witness identity", "[counterexample]") {
  auto hz = make_heisenberg(0);
  auto x  = Element::base_generator(hz, 0);
  auto y  = Element::base_generator(hz, 1);
  auto z  = Element::central_generator(hz, 0);
  auto t0 = std::chrono::steady_clock::now();
  for (Int q : {Int(1), Int(10), Int(1000000), Int(pow(Int(10), 40))}) {
    Element lhs = commutator(x, power(y, q));
    CHECK(lhs == power(z, -q));
    CHECK(lhs.central_exponents()[0] == -q);
    CHECK(commutator(y, x) == z);
  }
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(1));
}

TEST_CASE("finite variants verify completely", "[counterexample]") {
  for (auto [q, m] : {std::pair{2, 4}, std::pair{2, 8}, std::pair{3, 9}}) {
    INFO("q=" << q << " m=" << m);
    auto c = build_counterexample(q, Int(m));
    auto r = verify_counterexample(c);
    CHECK(r.passed());
    for (auto const& id : {"i", "ii", "iii", "iv.star", "iv.star_star", "iv.korollar3",
                           "iv.decide", "v.class2", "v.injective", "v.agree", "v.strong",
                           "B2=D2"}) {
      INFO(id);
      CHECK(passed(r, id));
      CHECK_FALSE(find(r, id).skipped);
    }
  }
}

TEST_CASE("integral variant skips the finite sweeps", "[counterexample]") {
  auto c = build_counterexample(2, std::nullopt);
  auto r = verify_counterexample(c);
  CHECK(r.passed());
  for (auto const& id : {"i", "ii", "iii", "v.class2", "v.injective", "v.agree", "v.strong",
                         "B2=D2"}) {
    INFO(id);
    CHECK(passed(r, id));
  }
  for (auto const& id : {"iv.star", "iv.star_star", "iv.korollar3", "iv.decide"}) {
    INFO(id);
    CHECK(find(r, id).skipped);
    CHECK(find(r, id).detail.find("finite-only") != std::string::npos);
  }
  CHECK(find(r, "iii").detail == "[a, b^q] = z^-2");
}

TEST_CASE("strong amalgam by enumeration", "[counterexample]") {
  for (auto [q, m] : {std::pair{2, 4}, std::pair{2, 6}}) {
    INFO("q=" << q << " m=" << m);
    auto c   = build_counterexample(q, Int(m));
    auto ea  = oracle::image(c.eps_A);
    auto eb  = oracle::image(c.eps_B);
    auto dg  = oracle::image(compose(c.eps_A, c.iota_A));
    auto dg2 = oracle::image(compose(c.eps_B, c.iota_B));
    CHECK(ea.size() == oracle::to_set(all_elements(c.A)).size());
    CHECK(eb.size() == oracle::to_set(all_elements(c.B)).size());
    CHECK(dg == dg2);
    CHECK(oracle::intersect(ea, eb) == dg);
    CHECK(oracle::subset(oracle::derived(c.G), oracle::center(c.G)));
    // the bracket (*) forbids is nontrivial already in D
    auto d = c.iota_B.preimage(power(c.b, Int(q)));
    REQUIRE(d);
    CHECK_FALSE(commutator(c.a, c.iota_A(*d)).is_identity());
  }
}

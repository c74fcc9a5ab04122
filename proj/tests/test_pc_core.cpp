#include <catch_amalgamated.hpp>

#include <random>

#include "instance_catalog.hpp"
#include "oracle.hpp"

using namespace nilamalg;

namespace {

  Element xyz(PresentationPtr const& h, long a, long b, long c) {
    return Element(h, {Int(a), Int(b)}, {Int(c)});
  }

  // Associativity over all triples through a table built from the
  // letter-by-letter collector, never from operator*.
  bool collected_associative(PresentationPtr const& p) {
    auto const        elems = all_elements(p);
    std::size_t const n     = elems.size();
    std::vector<std::size_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        table[a * n + b] = element_index(oracle::collect_product(elems[a], elems[b]));
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  Int random_big(std::mt19937_64& rng) {
    Int v = Int(rng() >> 1) * Int(rng()) - Int(rng() >> 2) * Int(rng());
    return v;
  }

}  // namespace

TEST_CASE("consistency of presentations", "[pc]") {
  SECTION("Heisenberg over Z") {
    auto r = check_consistency(make_heisenberg(0));
    CHECK(r.consistent);
    CHECK(r.method == ConsistencyReport::Method::overlap);
  }
  SECTION("free abelian of rank 2") {
    CHECK(check_consistency(make_free_abelian(2)).consistent);
  }
  SECTION("x^2 = z, z of order 2, [y,x] = z") {
    PresentationBuilder b("broken?");
    b.base("x", 2).base("y", 2).central("z", 2).comm(1, 0, {1}).pow(0, {1});
    auto p = b.build();
    // frozen from the collector oracle: this is D8 in disguise
    REQUIRE(collected_associative(p));
    auto r = check_consistency(p);
    CHECK(r.method == ConsistencyReport::Method::exhaustive);
    CHECK(r.consistent);
  }
  SECTION("[y,x] = z with x of order 2 and z of order 4 is inconsistent") {
    PresentationBuilder b("broken");
    b.base("x", 2).base("y", 2).central("z", 4).comm(1, 0, {1});
    auto p = b.build();
    REQUIRE_FALSE(collected_associative(p));
    auto r = check_consistency(p);
    CHECK_FALSE(r.consistent);
    REQUIRE(r.violation);
    auto const& [u, v, w] = *r.violation;
    CHECK((u * v) * w != u * (v * w));
    auto overlap = check_consistency(p, 0);
    CHECK(overlap.method == ConsistencyReport::Method::overlap);
    CHECK_FALSE(overlap.consistent);
  }
  SECTION("non-central relation values are rejected") {
    PresentationBuilder b("bad");
    b.base("x", 0).base("y", 0).central("z", 0);
    CHECK_THROWS_AS(central_vector(b, Word::parse("x")), MalformedRelation);
  }
  SECTION("exhaustive and overlap methods agree on the catalog") {
    for (auto const& g : catalog::finite_groups()) {
      INFO(g.name);
      CHECK(check_consistency(g.group).consistent);
      CHECK(check_consistency(g.group, 0).consistent);
    }
  }
}

TEST_CASE("multiplication", "[pc]") {
  auto h = make_heisenberg(0);
  // frozen from oracle::collect
  CHECK(xyz(h, 1, 1, 0) * xyz(h, 1, 0, 0) == xyz(h, 2, 1, 1));
  CHECK(xyz(h, 1, 1, 0) * xyz(h, 1, 1, 0) == xyz(h, 2, 2, 1));
  CHECK(oracle::collect_product(xyz(h, 1, 1, 0), xyz(h, 1, 0, 0)) == xyz(h, 2, 1, 1));
  CHECK(oracle::collect_product(xyz(h, 1, 1, 0), xyz(h, 1, 1, 0)) == xyz(h, 2, 2, 1));
  auto u = xyz(h, 3, -2, 7);
  CHECK(u * identity(h) == u);
  CHECK(identity(h) * u == u);
  CHECK_THROWS_AS(u * Element::base_generator(make_cyclic(3), 0), MismatchedGroups);

  auto h5 = make_heisenberg(5);
  CHECK(check_consistency(h5).consistent);
  CHECK(xyz(h5, 1, 1, 0) * xyz(h5, 1, 0, 0) == xyz(h5, 2, 1, 1));
}

TEST_CASE("closed form agrees with letter-by-letter collection", "[pc]") {
  for (auto const& g : catalog::finite_groups()) {
    if (*g.group->order() > 128) {
      continue;
    }
    INFO(g.name);
    auto elems = all_elements(g.group);
    std::size_t bad = 0;
    for (auto const& u : elems) {
      for (auto const& v : elems) {
        bad += u * v != oracle::collect_product(u, v);
      }
    }
    CHECK(bad == 0);
  }
  std::mt19937_64 rng(7);
  auto            h = make_heisenberg(0);
  for (int k = 0; k < 200; ++k) {
    auto pick = [&] { return static_cast<long>(rng() % 11) - 5; };
    auto u = xyz(h, pick(), pick(), pick());
    auto v = xyz(h, pick(), pick(), pick());
    CHECK(u * v == oracle::collect_product(u, v));
  }
}

TEST_CASE("inverse", "[pc]") {
  auto h = make_heisenberg(0);
  CHECK(inverse(identity(h)) == identity(h));
  CHECK(inverse(xyz(h, 1, 1, 0)) == xyz(h, -1, -1, 1));
  CHECK(xyz(h, 1, 1, 0) * xyz(h, -1, -1, 1) == identity(h));
  CHECK(inverse(xyz(h, 0, 0, 9)) == xyz(h, 0, 0, -9));
  for (auto const& g : catalog::finite_groups()) {
    INFO(g.name);
    for (auto const& u : all_elements(g.group)) {
      REQUIRE(u * inverse(u) == identity(g.group));
      REQUIRE(inverse(u) * u == identity(g.group));
    }
  }
}

TEST_CASE("power", "[pc]") {
  auto h  = make_heisenberg(0);
  auto xy = xyz(h, 1, 1, 0);
  CHECK(power(xy, 0) == identity(h));
  CHECK(power(xy, 2) == xyz(h, 2, 2, 1));
  CHECK(power(xy, 2) == xy * xy);
  CHECK(power(Element::base_generator(h, 1), 3) == xyz(h, 0, 3, 0));

  auto iterated = [](Element const& u, int n) {
    Element out(u.group());
    Element step = n < 0 ? inverse(u) : u;
    for (int k = 0; k < std::abs(n); ++k) {
      out = out * step;
    }
    return out;
  };
  for (auto const& g : catalog::finite_groups()) {
    INFO(g.name);
    auto elems = all_elements(g.group);
    for (std::size_t i = 0; i < elems.size(); i += 1 + elems.size() / 40) {
      for (int n = -12; n <= 12; ++n) {
        REQUIRE(power(elems[i], n) == iterated(elems[i], n));
      }
    }
  }
  for (auto const& u : {xy, xyz(h, -2, 3, 5), xyz(h, 0, -1, 1)}) {
    for (int n = -12; n <= 12; ++n) {
      REQUIRE(power(u, n) == iterated(u, n));
    }
  }
}

TEST_CASE("commutator", "[pc]") {
  auto h = make_heisenberg(0);
  auto x = Element::base_generator(h, 0);
  auto y = Element::base_generator(h, 1);
  auto z = Element::central_generator(h, 0);
  CHECK(commutator(y, x) == z);
  CHECK(commutator(x, y) == inverse(z));
  for (int q : {1, 2, 3, 7}) {
    CHECK(commutator(x, power(y, q)) == power(z, -q));
  }
  CHECK(commutator(xyz(h, 4, -3, 2), xyz(h, 4, -3, 2)).is_identity());
  CHECK(commutator(x, xyz(h, 5, 6, 7)).in_central_tier());
}

TEST_CASE("direct products", "[pc]") {
  auto h = make_heisenberg(4);
  auto p = direct_product(make_cyclic(2, "t"), h, "A");
  CHECK(*p.group->order() == 128);
  CHECK(p.left.certificate().injectivity == Injectivity::coordinate_inclusion);
  CHECK(p.right.certificate().injectivity == Injectivity::coordinate_inclusion);
  CHECK(commutator(p.left(Element::base_generator(make_cyclic(2, "t"), 0)),
                   p.right(Element::base_generator(h, 0)))
            .is_identity());
  CHECK(check_consistency(p.group).consistent);

  // P x trivial has P's normal forms
  auto t = direct_product(h, make_cyclic(1));
  CHECK(t.group->same_structure(*h));

  auto klein = direct_product(make_cyclic(2), make_cyclic(2));
  CHECK(all_elements(klein.group).size() == 4);
  CHECK(klein.group->base_generators()[1].name == "g_2");
}

TEST_CASE("catalog construction", "[pc]") {
  CHECK(*construct_named("heisenberg_mod", {4})->order() == 64);
  CHECK(all_elements(construct_named("heisenberg_mod", {4})).size() == 64);
  CHECK(*construct_named("cyclic", {1})->order() == 1);
  auto q8 = construct_named("quaternion8", {});
  CHECK(*q8->order() == 8);
  CHECK(oracle::derived(q8).size() == 2);
  CHECK(*derived_subgroup(q8).order() == 2);
  CHECK_FALSE(construct_named("heisenberg_Z", {})->is_finite());
  CHECK_FALSE(construct_named("free_abelian", {3})->order());
  for (int p : {2, 3}) {
    for (int s : {1, -1}) {
      auto e = construct_named("extraspecial", {p, s});
      INFO(e->name());
      CHECK(*e->order() == p * p * p);
      CHECK(check_consistency(e).consistent);
      CHECK(oracle::center(e).size() == static_cast<std::size_t>(p));
      CHECK(oracle::derived(e).size() == static_cast<std::size_t>(p));
    }
  }
  // the two extraspecial groups of order 27 differ in exponent
  CHECK(group_exponent(make_extraspecial(3, true)) == 3);
  CHECK(group_exponent(make_extraspecial(3, false)) == 9);
  CHECK_THROWS_AS(construct_named("nonsense", {}), InvalidArgument);
  CHECK_THROWS_AS(construct_named("heisenberg_mod", {1}), InvalidArgument);
  CHECK_THROWS_AS(construct_named("cyclic", {}), InvalidArgument);
  CHECK_THROWS_AS(construct_named("extraspecial", {4, 1}), InvalidArgument);
  CHECK_THROWS_AS(construct_named("extraspecial", {3, 0}), InvalidArgument);
}

TEST_CASE("element enumeration", "[pc]") {
  CHECK(all_elements(make_heisenberg(2)).size() == 8);
  CHECK(all_elements(make_cyclic(1)).size() == 1);
  auto c2h4 = direct_product(make_cyclic(2), make_heisenberg(4)).group;
  CHECK(all_elements(c2h4).size() == 128);
  CHECK_THROWS_AS(all_elements(make_heisenberg(0)), InfiniteGroupError);
  for (auto const& g : catalog::finite_groups()) {
    INFO(g.name);
    auto elems = all_elements(g.group);
    REQUIRE(elems.size() == static_cast<std::size_t>(*g.group->order()));
    CHECK(oracle::to_set(elems).size() == elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      REQUIRE(element_index(elems[i]) == i);
    }
  }
}

TEST_CASE("element orders", "[pc]") {
  auto h4 = make_heisenberg(4);
  CHECK(order_of_element(identity(h4)) == Int(1));
  CHECK(order_of_element(Element::base_generator(h4, 0)) == Int(4));
  CHECK_FALSE(order_of_element(Element::base_generator(make_heisenberg(0), 0)));
  CHECK(order_of_element(Element::base_generator(make_dihedral8(), 0)) == Int(4));
  for (auto const& g : catalog::finite_groups()) {
    INFO(g.name);
    for (auto const& u : all_elements(g.group)) {
      Int     n = 1;
      Element v = u;
      while (!v.is_identity()) {
        v = v * u;
        ++n;
      }
      REQUIRE(order_of_element(u) == n);
    }
  }
}

TEST_CASE("exhaustive associativity and unique normal forms", "[pc]") {
  for (auto const& g : catalog::finite_groups()) {
    INFO(g.name);
    auto const        elems = all_elements(g.group);
    std::size_t const n     = elems.size();
    REQUIRE(n <= 256);
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        table[a * n + b] = static_cast<std::uint32_t>(element_index(elems[a] * elems[b]));
      }
    }
    std::size_t bad = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          bad += table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]];
        }
      }
    }
    CHECK(bad == 0);
    for (auto const& u : elems) {
      REQUIRE(evaluate(g.group, to_word(u)) == u);
      REQUIRE(Element(g.group, u.base_exponents(), u.central_exponents()) == u);
    }
  }
  // unreduced words collect idempotently
  std::mt19937 rng(11);
  for (auto const& g : catalog::finite_groups()) {
    auto gens = generators(g.group);
    if (gens.empty()) {
      continue;
    }
    for (int k = 0; k < 50; ++k) {
      std::vector<Letter> letters;
      for (int t = 0; t < 8; ++t) {
        std::size_t s = rng() % gens.size();
        auto name = s < g.group->number_of_base()
                        ? g.group->base_generators()[s].name
                        : g.group->central_generators()[s - g.group->number_of_base()].name;
        letters.push_back({name, Int(static_cast<int>(rng() % 13) - 6)});
      }
      Element u = evaluate(g.group, Word(letters));
      REQUIRE(evaluate(g.group, to_word(u)) == u);
    }
  }
}

TEST_CASE("class-two commutator laws", "[pc]") {
  auto laws = [](Element const& u, Element const& v, Element const& w) {
    CHECK(commutator(u * v, w) == commutator(u, w) * commutator(v, w));
    CHECK(commutator(u, v * w) == commutator(u, v) * commutator(u, w));
    CHECK(inverse(commutator(u, v)) == commutator(v, u));
    CHECK(commutator(commutator(u, v), w).is_identity());
    for (int n : {-3, 2, 5}) {
      CHECK(commutator(power(u, n), v) == power(commutator(u, v), n));
    }
  };
  for (auto const& g : catalog::finite_groups()) {
    INFO(g.name);
    auto elems = all_elements(g.group);
    std::size_t step = elems.size() <= 16 ? 1 : elems.size() / 12;
    for (std::size_t a = 0; a < elems.size(); a += step) {
      for (std::size_t b = 0; b < elems.size(); b += step) {
        for (std::size_t c = 0; c < elems.size(); c += 2 * step) {
          laws(elems[a], elems[b], elems[c]);
        }
      }
    }
  }
  std::mt19937_64 rng(2024);
  auto            h = make_heisenberg(0);
  for (int k = 0; k < 100; ++k) {
    auto r = [&] { return Element(h, {random_big(rng), random_big(rng)}, {random_big(rng)}); };
    auto u = r(), v = r(), w = r();
    laws(u, v, w);
    Int n = random_big(rng);
    CHECK(commutator(power(u, n), v) == power(commutator(u, v), n));
  }
}

#ifndef NILAMALG_COUNTEREXAMPLE_HPP_
#define NILAMALG_COUNTEREXAMPLE_HPP_

// A = B = Z/q x D with D Heisenberg (over Z or mod m), amalgamated in
// G = Z/q x D x Z/q.  D is co-central in B, the pair a = x, b = t y breaks
// (*), yet the amalgam embeds (strongly) in G.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "conditions.hpp"
#include "consistency.hpp"
#include "element.hpp"
#include "embedding.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "product.hpp"
#include "subgroup.hpp"

namespace nilamalg {

  struct CounterexampleBundle {
    Int                q;
    std::optional<Int> modulus;  // empty: D over the integers
    PresentationPtr    D, A, B, G;
    Embedding          iota_A, iota_B;
    Embedding          eps_A, eps_B;
    Element            a, b;

    AmalgamInstance instance() const {
      return AmalgamInstance(A, B, D, iota_A, iota_B);
    }
    bool is_finite() const {
      return modulus.has_value();
    }
  };

  inline CounterexampleBundle build_counterexample(Int const& q, std::optional<Int> modulus) {
    if (q < 2) {
      throw InvalidArgument("q must be at least 2");
    }
    if (modulus) {
      Int const& m = *modulus;
      if (m < 2) {
        throw InvalidArgument("modulus must be at least 2");
      }
      if (m % q != 0) {
        throw InvalidArgument("q must divide the modulus");
      }
      if (m <= q) {
        throw InvalidArgument("modulus must exceed q");
      }
    }
    PresentationPtr D = modulus ? make_heisenberg(*modulus, "D") : make_heisenberg(0, "D");
    auto            A = direct_product(make_cyclic(q, "t"), D, "A");
    auto            B = direct_product(make_cyclic(q, "t"), D, "B");
    auto            G = direct_product(A.group, make_cyclic(q, "s"), "G");
    // generators: A, B = (t, x, y | z);  G = (t, x, y, s | z)
    PresentationPtr g = G.group;
    Embedding       eps_B(B.group, g,
                          {Element::base_generator(g, 3), Element::base_generator(g, 1),
                           Element::base_generator(g, 2), Element::central_generator(g, 0)});

    Element a = Element::base_generator(A.group, 1);
    Element b = Element::base_generator(B.group, 0) * Element::base_generator(B.group, 2);
    return {q, std::move(modulus), D, A.group, B.group, g, A.right, B.right, G.left, eps_B, a, b};
  }

  inline Subgroup intersection_in_amalgam(CounterexampleBundle const& c) {
    return intersect(c.eps_A.image(), c.eps_B.image());
  }

  struct SubCheck {
    std::string id;
    std::string description;
    bool        passed  = false;
    bool        skipped = false;
    std::string detail;
  };

  struct CounterexampleReport {
    std::vector<SubCheck> checks;

    bool passed() const {
      for (auto const& c : checks) {
        if (!c.skipped && !c.passed) {
          return false;
        }
      }
      return true;
    }
  };

  inline CounterexampleReport verify_counterexample(CounterexampleBundle const& c) {
    CounterexampleReport report;
    auto add = [&](std::string id, std::string description, bool ok, std::string detail = "") {
      report.checks.push_back({std::move(id), std::move(description), ok, false, std::move(detail)});
    };
    auto skip = [&](std::string id, std::string description, std::string why) {
      report.checks.push_back({std::move(id), std::move(description), false, true, std::move(why)});
    };

    AmalgamInstance const inst = c.instance();
    Subgroup const        D_A  = c.iota_A.image();
    Subgroup const        D_B  = c.iota_B.image();

    add("i", "D is co-central in B", is_cocentral(D_B));

    Element const a_q = power(c.a, c.q);
    Element const b_q = power(c.b, c.q);
    add("ii", "a^q in D, b^q in D, b not in D",
        D_A.contains(a_q) && D_B.contains(b_q) && !D_B.contains(c.b),
        "a^q = " + to_string(a_q) + ", b^q = " + to_string(b_q));

    // [a, b^q] evaluated in A after moving b^q through D
    auto const    d_bq  = c.iota_B.preimage(b_q);
    Element const value = d_bq ? commutator(c.a, c.iota_A(*d_bq)) : Element(c.A);
    Element const x     = Element::base_generator(c.D, 0);
    Element const y     = Element::base_generator(c.D, 1);
    Element const z_mq  = power(Element::central_generator(c.D, 0), -c.q);
    bool const    value_ok = d_bq && !value.is_identity()
                          && value == c.iota_A(commutator(x, power(y, c.q)))
                          && value == c.iota_A(z_mq);
    add("iii", "[a, b^q] = [x, y^q] = z^-q != e", value_ok, "[a, b^q] = " + to_string(value));

    if (c.is_finite()) {
      ConditionReport star = check_star(inst);
      bool paper_witness = !star.holds && star.witness && star.witness->q == c.q
                           && star.witness->at("a") == c.a && star.witness->at("b") == c.b;
      std::string w = star.witness ? "q = " + to_string(*star.witness->q) + ", a = "
                                         + to_string(star.witness->at("a")) + ", b = "
                                         + to_string(star.witness->at("b"))
                                   : "no witness";
      add("iv.star", "(*) fails with witness a = x, b = t y", paper_witness, w);
      add("iv.star_star", "(**) holds", check_star_star(inst).holds);
      add("iv.korollar3", "korollar3 holds", check_korollar3(inst).holds);
      ConditionReport verdict = decide_embeddability(inst);
      add("iv.decide", "dispatcher reports embeddable", verdict.holds,
          "criterion " + verdict.criterion);
    } else {
      std::string why = "finite-only: exhaustive sweeps need a finite quotient";
      skip("iv.star", "(*) fails with witness a = x, b = t y", why);
      skip("iv.star_star", "(**) holds", why);
      skip("iv.korollar3", "korollar3 holds", why);
      skip("iv.decide", "dispatcher reports embeddable", why);
    }

    ConsistencyReport cons = check_consistency(c.G);
    add("v.class2", "G is a consistent class-2 presentation", cons.consistent, cons.detail);
    add("v.injective", "eps_A and eps_B are injective",
        c.eps_A.certificate().certified_injective() && c.eps_B.certificate().certified_injective());
    bool agree = true;
    for (auto const& g : generators(c.D)) {
      agree = agree && c.eps_A(c.iota_A(g)) == c.eps_B(c.iota_B(g));
    }
    add("v.agree", "eps_A . iota_A = eps_B . iota_B on D", agree);
    Subgroup meet = intersection_in_amalgam(c);
    Subgroup D_G  = compose(c.eps_A, c.iota_A).image();
    std::string order = meet.is_finite() ? to_string(*meet.order()) : std::string("infinite");
    add("v.strong", "eps_A(A) meet eps_B(B) = D", meet == D_G, "|A meet B| = " + order);

    add("B2=D2", "derived subgroup of B equals iota_B(D_2)",
        derived_subgroup(c.B) == subgroup_generated(c.B, [&] {
          std::vector<Element> gens;
          for (auto const& e : derived_subgroup(c.D).basis()) {
            gens.push_back(c.iota_B(e));
          }
          return gens;
        }()));
    return report;
  }

}  // namespace nilamalg

#endif  // NILAMALG_COUNTEREXAMPLE_HPP_

#ifndef NILAMALG_PRODUCT_HPP_
#define NILAMALG_PRODUCT_HPP_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "element.hpp"
#include "embedding.hpp"
#include "presentation.hpp"

namespace nilamalg {

  struct DirectProduct {
    PresentationPtr group;
    Embedding       left;   // P -> P x Q
    Embedding       right;  // Q -> P x Q
  };

  // P x Q with the base generators of P, then those of Q (likewise for the
  // central tier).  Names of Q that clash with names of P get a "_2" suffix.
  inline DirectProduct direct_product(PresentationPtr const& p,
                                      PresentationPtr const& q,
                                      std::string            name = "") {
    if (name.empty()) {
      name = p->name() + "x" + q->name();
    }
    std::set<std::string> taken;
    for (auto const& g : p->base_generators()) {
      taken.insert(g.name);
    }
    for (auto const& g : p->central_generators()) {
      taken.insert(g.name);
    }
    auto fresh = [&](std::string s) {
      while (taken.count(s) != 0) {
        s += "_2";
      }
      taken.insert(s);
      return s;
    };

    std::size_t         np = p->number_of_base(), nq = q->number_of_base();
    std::size_t         cp = p->number_of_central(), cq = q->number_of_central();
    PresentationBuilder b(name);
    for (auto const& g : p->base_generators()) {
      b.base(g.name, g.order);
    }
    std::vector<std::string> q_base, q_central;
    for (auto const& g : q->base_generators()) {
      q_base.push_back(fresh(g.name));
    }
    for (auto const& g : q->central_generators()) {
      q_central.push_back(fresh(g.name));
    }
    for (std::size_t i = 0; i < nq; ++i) {
      b.base(q_base[i], q->base_order(i));
    }
    for (auto const& g : p->central_generators()) {
      b.central(g.name, g.order);
    }
    for (std::size_t j = 0; j < cq; ++j) {
      b.central(q_central[j], q->central_order(j));
    }
    auto left_vec = [&](CentralVector const& w) {
      CentralVector v(cp + cq);
      for (std::size_t j = 0; j < cp; ++j) {
        v[j] = w[j];
      }
      return v;
    };
    auto right_vec = [&](CentralVector const& w) {
      CentralVector v(cp + cq);
      for (std::size_t j = 0; j < cq; ++j) {
        v[cp + j] = w[j];
      }
      return v;
    };
    for (std::size_t j = 0; j < np; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (p->has_comm(j, i)) {
          b.comm(j, i, left_vec(p->comm(j, i)));
        }
      }
      if (p->base_order(j) != 0 && p->has_pow(j)) {
        b.pow(j, left_vec(p->pow(j)));
      }
    }
    for (std::size_t j = 0; j < nq; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (q->has_comm(j, i)) {
          b.comm(np + j, np + i, right_vec(q->comm(j, i)));
        }
      }
      if (q->base_order(j) != 0 && q->has_pow(j)) {
        b.pow(np + j, right_vec(q->pow(j)));
      }
    }
    PresentationPtr g = b.build();

    std::vector<Element> li, ri;
    for (std::size_t i = 0; i < np; ++i) {
      li.push_back(Element::base_generator(g, i));
    }
    for (std::size_t j = 0; j < cp; ++j) {
      li.push_back(Element::central_generator(g, j));
    }
    for (std::size_t i = 0; i < nq; ++i) {
      ri.push_back(Element::base_generator(g, np + i));
    }
    for (std::size_t j = 0; j < cq; ++j) {
      ri.push_back(Element::central_generator(g, cp + j));
    }
    return {g, Embedding(p, g, std::move(li)), Embedding(q, g, std::move(ri))};
  }

}  // namespace nilamalg

#endif  // NILAMALG_PRODUCT_HPP_

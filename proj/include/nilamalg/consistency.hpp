#ifndef NILAMALG_CONSISTENCY_HPP_
#define NILAMALG_CONSISTENCY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "element.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace nilamalg {

  struct ConsistencyReport {
    enum class Method { exhaustive, overlap };

    bool   consistent = true;
    Method method     = Method::overlap;
    // First triple (u, v, w) with (uv)w != u(vw), if any.
    std::optional<std::array<Element, 3>> violation;
    std::string                           detail;
  };

  namespace detail {
    inline std::optional<std::array<Element, 3>> associativity_violation(Element const& u,
                                                                         Element const& v,
                                                                         Element const& w) {
      if ((u * v) * w != u * (v * w)) {
        return std::array<Element, 3>{u, v, w};
      }
      return std::nullopt;
    }

    inline std::string describe(std::array<Element, 3> const& t) {
      return "(" + to_string(t[0]) + ", " + to_string(t[1]) + ", " + to_string(t[2]) + ")";
    }
  }  // namespace detail

  // Decide whether the closed-form collection defines a group.
  //
  // Finite presentations with at most `exhaustive_bound` elements are
  // checked on all triples through a full multiplication table.  Otherwise
  // the overlap triples (g_i^{m_i-1}, g_i, g_k) and (g_k, g_i^{m_i-1}, g_i)
  // are checked for every finite-order g_i and every other base g_k: the
  // collection formula is associative exactly when these agree, i.e. when
  // m_i * w_ji and m_j * w_ji vanish in the central tier.
  inline ConsistencyReport check_consistency(PresentationPtr const& p,
                                             std::size_t            exhaustive_bound = 512) {
    ConsistencyReport report;
    auto              n = p->order();
    if (n && *n <= exhaustive_bound) {
      report.method              = ConsistencyReport::Method::exhaustive;
      std::size_t          size  = static_cast<std::size_t>(*n);
      std::vector<Element> elems = all_elements(p);
      std::vector<std::uint32_t> table(size * size);
      for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = 0; b < size; ++b) {
          table[a * size + b] = static_cast<std::uint32_t>(element_index(elems[a] * elems[b]));
        }
      }
      for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = 0; b < size; ++b) {
          std::size_t ab = table[a * size + b];
          for (std::size_t c = 0; c < size; ++c) {
            if (table[ab * size + c] != table[a * size + table[b * size + c]]) {
              report.consistent = false;
              report.violation  = std::array<Element, 3>{elems[a], elems[b], elems[c]};
              report.detail     = "associativity fails on " + detail::describe(*report.violation);
              return report;
            }
          }
        }
      }
      return report;
    }

    report.method = ConsistencyReport::Method::overlap;
    for (std::size_t i = 0; i < p->number_of_base(); ++i) {
      Int const& m = p->base_order(i);
      if (m == 0) {
        continue;
      }
      Element g  = Element::base_generator(p, i);
      Element gm = power(g, m - 1);
      for (std::size_t k = 0; k < p->number_of_base(); ++k) {
        if (k == i) {
          continue;
        }
        Element h = Element::base_generator(p, k);
        auto    v = detail::associativity_violation(gm, g, h);
        if (!v) {
          v = detail::associativity_violation(h, gm, g);
        }
        if (v) {
          report.consistent = false;
          report.violation  = *v;
          report.detail     = "overlap of " + p->base_generators()[i].name + "^"
                          + m.str() + " with " + p->base_generators()[k].name
                          + " fails on " + detail::describe(*v);
          return report;
        }
      }
    }
    return report;
  }

}  // namespace nilamalg

#endif  // NILAMALG_CONSISTENCY_HPP_

#ifndef NILAMALG_SUBGROUP_HPP_
#define NILAMALG_SUBGROUP_HPP_

// Subgroups of two-tier presentations.
//
// A subgroup S is stored through two lattices:
//
//   * the base lattice: the image of S in the abelian base tier
//     (Z/m_1 x ... x Z/m_n), as an HNF basis of the preimage lattice in Z^n
//     (so it always contains the relation vectors m_i e_i);
//   * the central lattice: S intersected with the central tier, likewise.
//
// For every base lattice row S has an element with exactly that (reduced)
// base vector; its central part is reduced modulo the central lattice,
// which makes the whole description canonical.  The central lattice is
// generated by the commutators of the generators together with the
// products of generators whose base vectors cancel.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "element.hpp"
#include "errors.hpp"
#include "integer.hpp"
#include "presentation.hpp"
#include "zlinalg.hpp"

namespace nilamalg {

  namespace detail {
    inline std::vector<Int> base_moduli(Presentation const& p) {
      std::vector<Int> m;
      for (auto const& g : p.base_generators()) {
        m.push_back(g.order);
      }
      return m;
    }

    inline std::vector<Int> central_moduli(Presentation const& p) {
      std::vector<Int> m;
      for (auto const& g : p.central_generators()) {
        m.push_back(g.order);
      }
      return m;
    }

    inline Element central_element(PresentationPtr const& p, std::vector<Int> v) {
      return Element(p, std::vector<Int>(p->number_of_base()), std::move(v));
    }

    // prod_i gens[i]^coeff[i], left to right
    inline Element product_of_powers(PresentationPtr const&      p,
                                     std::vector<Element> const& gens,
                                     std::vector<Int> const&     coeff) {
      Element out(p);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (coeff[i] != 0) {
          out = out * power(gens[i], coeff[i]);
        }
      }
      return out;
    }

    inline IntMatrix nonzero_rows(HermiteResult const& res) {
      IntMatrix out(0, res.H.cols(), res.H.moduli());
      for (std::size_t r = 0; r < res.rank; ++r) {
        out.append_row(res.H.row(r));
      }
      return out;
    }
  }  // namespace detail

  class Subgroup {
   public:
    Subgroup() = default;

    Subgroup(PresentationPtr parent, std::vector<Element> gens)
        : parent_(std::move(parent)), gens_(std::move(gens)) {
      for (auto const& g : gens_) {
        if (!parent_->same_structure(g.presentation())) {
          throw MismatchedGroups();
        }
      }
      build();
    }

    PresentationPtr const& parent() const noexcept {
      return parent_;
    }

    std::vector<Element> const& generators() const noexcept {
      return gens_;
    }

    IntMatrix const& base_lattice() const noexcept {
      return base_hnf_;
    }
    IntMatrix const& central_lattice() const noexcept {
      return central_hnf_;
    }

    // One element of S per base lattice row (the identity when the row
    // vanishes modulo the generator orders).
    std::vector<Element> const& base_basis() const noexcept {
      return base_basis_;
    }

    // The nontrivial canonical basis elements, base tier first.
    std::vector<Element> basis() const {
      std::vector<Element> out;
      for (auto const& e : base_basis_) {
        if (!e.is_identity()) {
          out.push_back(e);
        }
      }
      for (std::size_t r = 0; r < central_hnf_.rows(); ++r) {
        Element c = detail::central_element(parent_, central_hnf_.row(r));
        if (!c.is_identity()) {
          out.push_back(c);
        }
      }
      return out;
    }

    bool is_trivial() const {
      return basis().empty();
    }

    bool contains(Element const& u) const {
      if (!parent_->same_structure(u.presentation())) {
        throw MismatchedGroups();
      }
      auto y = solve_echelon(base_hnf_, u.base_exponents());
      if (!y) {
        return false;
      }
      Element c = inverse(detail::product_of_powers(parent_, base_basis_, *y)) * u;
      return solve_echelon(central_hnf_, c.central_exponents()).has_value();
    }

    // Canonical representative of the left coset u S.
    Element coset_representative(Element const& u) const {
      if (!parent_->same_structure(u.presentation())) {
        throw MismatchedGroups();
      }
      auto    red = reduce_mod_lattice(base_hnf_, u.base_exponents());
      Element v   = u * inverse(detail::product_of_powers(parent_, base_basis_, red.coefficients));
      auto    c   = reduce_mod_lattice(central_hnf_, v.central_exponents());
      return Element(parent_, v.base_exponents(), std::move(c.remainder));
    }

    // |S|, or nullopt when S is infinite.
    std::optional<Int> order() const {
      auto base = lattice_index(base_hnf_);
      auto cent = lattice_index(central_hnf_);
      if (!base || !cent) {
        return std::nullopt;
      }
      return *base * *cent;
    }

    bool is_finite() const {
      return order().has_value();
    }

    // Every element of a finite S exactly once.
    std::vector<Element> elements() const {
      if (!is_finite()) {
        throw InfiniteGroupError("cannot enumerate an infinite subgroup of " + parent_->name());
      }
      std::vector<Element> central;
      {
        std::vector<Int> radix = relative_orders(central_hnf_);
        std::vector<Int> counter(radix.size());
        while (true) {
          std::vector<Int> v(parent_->number_of_central());
          for (std::size_t r = 0; r < counter.size(); ++r) {
            for (std::size_t c = 0; c < v.size(); ++c) {
              v[c] += counter[r] * central_hnf_(r, c);
            }
          }
          central.push_back(detail::central_element(parent_, std::move(v)));
          if (!next(counter, radix)) {
            break;
          }
        }
      }
      std::vector<Element> out;
      std::vector<Int>     radix = relative_orders(base_hnf_);
      std::vector<Int>     counter(radix.size());
      while (true) {
        Element b = detail::product_of_powers(parent_, base_basis_, counter);
        for (auto const& c : central) {
          out.push_back(b * c);
        }
        if (!next(counter, radix)) {
          break;
        }
      }
      return out;
    }

    bool operator==(Subgroup const& that) const {
      if (!parent_->same_structure(*that.parent_)) {
        return false;
      }
      if (!(base_hnf_ == that.base_hnf_) || !(central_hnf_ == that.central_hnf_)) {
        return false;
      }
      for (std::size_t r = 0; r < base_basis_.size(); ++r) {
        if (base_basis_[r].central_exponents() != that.base_basis_[r].central_exponents()) {
          return false;
        }
      }
      return true;
    }
    bool operator!=(Subgroup const& that) const {
      return !(*this == that);
    }

    // S <= T (same parent).
    bool is_subgroup_of(Subgroup const& t) const {
      for (auto const& b : basis()) {
        if (!t.contains(b)) {
          return false;
        }
      }
      return true;
    }

   private:
    void build() {
      Presentation const& p = *parent_;
      std::size_t         k = gens_.size();

      IntMatrix base(0, p.number_of_base(), detail::base_moduli(p));
      for (auto const& g : gens_) {
        base.append_row(g.base_exponents());
      }
      HermiteResult res = hermite_normal_form(base);
      base_hnf_         = detail::nonzero_rows(res);

      // Raw elements realising the base rows, and the central elements
      // coming from relations among base vectors.
      auto coefficients = [&](std::size_t r) {
        std::vector<Int> x(k);
        for (std::size_t i = 0; i < k; ++i) {
          x[i] = res.U(r, i);
        }
        return x;
      };
      std::vector<Element> raw;
      for (std::size_t r = 0; r < res.rank; ++r) {
        raw.push_back(detail::product_of_powers(parent_, gens_, coefficients(r)));
      }
      IntMatrix central(0, p.number_of_central(), detail::central_moduli(p));
      for (std::size_t r = res.rank; r < res.H.rows(); ++r) {
        Element c = detail::product_of_powers(parent_, gens_, coefficients(r));
        central.append_row(c.central_exponents());
      }
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          central.append_row(commutator(gens_[i], gens_[j]).central_exponents());
        }
        if (gens_[i].in_central_tier()) {
          central.append_row(gens_[i].central_exponents());
        }
      }
      central_hnf_ = lattice_basis(central);

      for (auto const& e : raw) {
        auto c = reduce_mod_lattice(central_hnf_, e.central_exponents());
        base_basis_.emplace_back(parent_, e.base_exponents(), std::move(c.remainder));
      }
    }

    // m_p / h_p per row of an HNF basis, all pivots in finite columns.
    static std::vector<Int> relative_orders(IntMatrix const& h) {
      std::vector<Int> out;
      for (std::size_t r = 0; r < h.rows(); ++r) {
        std::size_t p = detail::pivot_column(h, r);
        out.push_back(h.moduli()[p] / h(r, p));
      }
      return out;
    }

    static std::optional<Int> lattice_index(IntMatrix const& h) {
      for (std::size_t r = 0; r < h.rows(); ++r) {
        for (std::size_t c = 0; c < h.cols(); ++c) {
          if (h.moduli()[c] == 0 && h(r, c) != 0) {
            return std::nullopt;
          }
        }
      }
      Int n = 1;
      for (auto const& x : relative_orders(h)) {
        n *= x;
      }
      return n;
    }

    static bool next(std::vector<Int>& counter, std::vector<Int> const& radix) {
      for (std::size_t i = 0; i < counter.size(); ++i) {
        if (++counter[i] < radix[i]) {
          return true;
        }
        counter[i] = 0;
      }
      return false;
    }

    PresentationPtr      parent_;
    std::vector<Element> gens_;
    IntMatrix            base_hnf_;
    IntMatrix            central_hnf_;
    std::vector<Element> base_basis_;
  };

  inline Subgroup subgroup_generated(PresentationPtr const& parent, std::vector<Element> gens) {
    return Subgroup(parent, std::move(gens));
  }

  inline Subgroup whole_group(PresentationPtr const& p) {
    return Subgroup(p, generators(p));
  }

  inline Subgroup trivial_subgroup(PresentationPtr const& p) {
    return Subgroup(p, {});
  }

  inline bool contains(Subgroup const& s, Element const& u) {
    return s.contains(u);
  }

  // The subgroup generated by the union.
  inline Subgroup join(Subgroup const& s, Subgroup const& t) {
    std::vector<Element> gens = s.basis();
    for (auto const& b : t.basis()) {
      gens.push_back(b);
    }
    return Subgroup(s.parent(), std::move(gens));
  }

  inline Subgroup intersect(Subgroup const& s, Subgroup const& t) {
    if (!s.parent()->same_structure(*t.parent())) {
      throw MismatchedGroups();
    }
    PresentationPtr const& p = s.parent();

    // Base vectors common to both projections: x * Hs == y * Ht.
    IntMatrix stacked(0, p->number_of_base());
    for (std::size_t r = 0; r < s.base_lattice().rows(); ++r) {
      stacked.append_row(s.base_lattice().row(r));
    }
    for (std::size_t r = 0; r < t.base_lattice().rows(); ++r) {
      auto v = t.base_lattice().row(r);
      for (auto& x : v) {
        x = -x;
      }
      stacked.append_row(v);
    }
    IntMatrix common = left_kernel(stacked);

    std::size_t const    ns = s.base_lattice().rows();
    std::vector<Element> lifts;  // s_k in S
    IntMatrix            phi(0, p->number_of_central(), detail::central_moduli(*p));
    for (std::size_t k = 0; k < common.rows(); ++k) {
      std::vector<Int> x(ns), y(t.base_lattice().rows());
      for (std::size_t r = 0; r < ns; ++r) {
        x[r] = common(k, r);
      }
      for (std::size_t r = 0; r < y.size(); ++r) {
        y[r] = common(k, ns + r);
      }
      Element sk = detail::product_of_powers(p, s.base_basis(), x);
      Element tk = detail::product_of_powers(p, t.base_basis(), y);
      // sk * tk^-1 is central; the lift of this common base vector lies in
      // the intersection iff that discrepancy is absorbed by C_S + C_T.
      phi.append_row((sk * inverse(tk)).central_exponents());
      lifts.push_back(std::move(sk));
    }

    IntMatrix system = phi;
    for (std::size_t r = 0; r < s.central_lattice().rows(); ++r) {
      system.append_row(s.central_lattice().row(r));
    }
    for (std::size_t r = 0; r < t.central_lattice().rows(); ++r) {
      system.append_row(t.central_lattice().row(r));
    }
    IntMatrix            kernel = left_kernel(system);
    std::vector<Element> gens;
    for (std::size_t k = 0; k < kernel.rows(); ++k) {
      std::vector<Int> x(lifts.size());
      for (std::size_t i = 0; i < lifts.size(); ++i) {
        x[i] = kernel(k, i);
      }
      std::vector<Int> cs(p->number_of_central());
      for (std::size_t r = 0; r < s.central_lattice().rows(); ++r) {
        Int const& coeff = kernel(k, lifts.size() + r);
        if (coeff != 0) {
          for (std::size_t c = 0; c < cs.size(); ++c) {
            cs[c] += coeff * s.central_lattice()(r, c);
          }
        }
      }
      gens.push_back(detail::product_of_powers(p, lifts, x) * detail::central_element(p, cs));
    }

    IntMatrix cc = lattice_intersection(s.central_lattice(), t.central_lattice());
    for (std::size_t r = 0; r < cc.rows(); ++r) {
      gens.push_back(detail::central_element(p, cc.row(r)));
    }
    return Subgroup(p, std::move(gens));
  }

  // Z(P): base vectors a with sum_i a_i [g_i, g_k] = 0 for every base g_k,
  // joined with the central tier.
  inline Subgroup center(PresentationPtr const& p) {
    std::size_t          n = p->number_of_base(), c = p->number_of_central();
    std::vector<Element> gens = generators(p);
    std::vector<Int>     moduli;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < c; ++j) {
        moduli.push_back(p->central_order(j));
      }
    }
    IntMatrix m(n, n * c, moduli);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        Element w = commutator(gens[i], gens[k]);
        for (std::size_t j = 0; j < c; ++j) {
          m(i, k * c + j) = w.central_exponents()[j];
        }
      }
    }
    IntMatrix            kernel = left_kernel(m);
    std::vector<Element> central;
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
      central.emplace_back(p, kernel.row(r), std::vector<Int>(c));
    }
    for (std::size_t j = 0; j < c; ++j) {
      central.push_back(Element::central_generator(p, j));
    }
    return Subgroup(p, std::move(central));
  }

  // [P, P], generated by the commutators of base generator pairs.
  inline Subgroup derived_subgroup(PresentationPtr const& p) {
    std::vector<Element> comms;
    for (std::size_t j = 0; j < p->number_of_base(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        comms.push_back(commutator(Element::base_generator(p, j), Element::base_generator(p, i)));
      }
    }
    return Subgroup(p, std::move(comms));
  }

  inline bool is_central_subgroup(Subgroup const& s) {
    auto gens = generators(s.parent());
    for (auto const& b : s.basis()) {
      for (auto const& g : gens) {
        if (!commutator(b, g).is_identity()) {
          return false;
        }
      }
    }
    return true;
  }

  // <S, Z(parent)> == parent
  inline bool is_cocentral(Subgroup const& s) {
    return join(s, center(s.parent())) == whole_group(s.parent());
  }

  inline bool is_normal(Subgroup const& s) {
    auto gens = generators(s.parent());
    for (auto const& b : s.basis()) {
      for (auto const& g : gens) {
        // b^g = b [b, g]
        if (!s.contains(commutator(b, g))) {
          return false;
        }
      }
    }
    return true;
  }

  enum class Tristate { no, yes, unknown };

  inline std::string to_string(Tristate t) {
    switch (t) {
      case Tristate::no: return "false";
      case Tristate::yes: return "true";
      default: return "unknown";
    }
  }

  // Structural torsion test: every generator of infinite order gives "yes";
  // a nontrivial generator of finite order gives "no".
  inline Tristate is_torsion_free(PresentationPtr const& p) {
    bool all_infinite = true;
    for (auto const& g : p->base_generators()) {
      all_infinite = all_infinite && g.order == 0;
    }
    for (auto const& g : p->central_generators()) {
      all_infinite = all_infinite && g.order == 0;
    }
    if (all_infinite) {
      return Tristate::yes;
    }
    for (auto const& g : generators(p)) {
      if (!g.is_identity() && order_of_element(g).has_value()) {
        return Tristate::no;
      }
    }
    return Tristate::unknown;
  }

}  // namespace nilamalg

#endif  // NILAMALG_SUBGROUP_HPP_

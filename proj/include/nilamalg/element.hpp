#ifndef NILAMALG_ELEMENT_HPP_
#define NILAMALG_ELEMENT_HPP_

#include <cstddef>
#include <functional>
#include <iterator>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "presentation.hpp"

namespace nilamalg {

  // An element in collected normal form.  Exponents are always reduced,
  // so two elements of the same presentation are equal iff their exponent
  // vectors are.
  class Element {
   public:
    Element() = default;

    // Identity of p.
    explicit Element(PresentationPtr p)
        : group_(std::move(p)),
          base_(group_->number_of_base()),
          central_(group_->number_of_central()) {}

    // Normal form from (possibly unreduced) exponent vectors, i.e. the
    // value of the word g^base z^central.
    Element(PresentationPtr p, std::vector<Int> base, std::vector<Int> central)
        : group_(std::move(p)), base_(std::move(base)), central_(std::move(central)) {
      if (base_.size() != group_->number_of_base()
          || central_.size() != group_->number_of_central()) {
        throw InvalidArgument("exponent vector length mismatch in "
                              + group_->name());
      }
      normalise();
    }

    static Element base_generator(PresentationPtr p, std::size_t i) {
      Element e(std::move(p));
      e.base_.at(i) = 1;
      e.normalise();
      return e;
    }

    static Element central_generator(PresentationPtr p, std::size_t j) {
      Element e(std::move(p));
      e.central_.at(j) = 1;
      e.normalise();
      return e;
    }

    PresentationPtr const& group() const noexcept {
      return group_;
    }
    Presentation const& presentation() const noexcept {
      return *group_;
    }

    std::vector<Int> const& base_exponents() const noexcept {
      return base_;
    }
    std::vector<Int> const& central_exponents() const noexcept {
      return central_;
    }

    bool is_identity() const {
      for (auto const& x : base_) {
        if (x != 0) {
          return false;
        }
      }
      for (auto const& x : central_) {
        if (x != 0) {
          return false;
        }
      }
      return true;
    }

    // True iff all base exponents vanish, i.e. the element is in the span
    // of the central generators.
    bool in_central_tier() const {
      for (auto const& x : base_) {
        if (x != 0) {
          return false;
        }
      }
      return true;
    }

    bool operator==(Element const& that) const {
      return base_ == that.base_ && central_ == that.central_
             && same_group(*this, that);
    }
    bool operator!=(Element const& that) const {
      return !(*this == that);
    }

    std::size_t hash() const {
      return hash_range(central_, hash_range(base_));
    }

    friend bool same_group(Element const& u, Element const& v) {
      return u.group_ == v.group_
             || (u.group_ && v.group_ && u.group_->same_structure(*v.group_));
    }

    friend Element operator*(Element const& u, Element const& v) {
      if (!same_group(u, v)) {
        throw MismatchedGroups();
      }
      Presentation const& p = *u.group_;
      std::size_t         n = p.number_of_base();
      Element             out(u.group_);
      for (std::size_t i = 0; i < n; ++i) {
        out.base_[i] = u.base_[i] + v.base_[i];
      }
      for (std::size_t j = 0; j < out.central_.size(); ++j) {
        out.central_[j] = u.central_[j] + v.central_[j];
      }
      // Moving g_i^{v_i} left past g_j^{u_j} (j > i) costs [g_j, g_i]^{u_j v_i}.
      for (std::size_t j = 1; j < n; ++j) {
        if (u.base_[j] == 0) {
          continue;
        }
        for (std::size_t i = 0; i < j; ++i) {
          if (v.base_[i] == 0 || !p.has_comm(j, i)) {
            continue;
          }
          Int                  k = u.base_[j] * v.base_[i];
          CentralVector const& w = p.comm(j, i);
          for (std::size_t c = 0; c < w.size(); ++c) {
            if (w[c] != 0) {
              out.central_[c] += k * w[c];
            }
          }
        }
      }
      out.normalise();
      return out;
    }

    Element& operator*=(Element const& v) {
      *this = *this * v;
      return *this;
    }

   private:
    // Reduce base exponents via the power relations, then the central tier.
    // Valid because the p_i are central.
    void normalise() {
      Presentation const& p = *group_;
      for (std::size_t i = 0; i < base_.size(); ++i) {
        Int const& m = p.base_order(i);
        if (m == 0) {
          continue;
        }
        Int carry = div_floor(base_[i], m);
        if (carry != 0) {
          base_[i] -= carry * m;
          CentralVector const& w = p.pow(i);
          for (std::size_t c = 0; c < w.size(); ++c) {
            if (w[c] != 0) {
              central_[c] += carry * w[c];
            }
          }
        }
      }
      for (std::size_t j = 0; j < central_.size(); ++j) {
        Int const& m = p.central_order(j);
        if (m != 0) {
          central_[j] = mod_floor(central_[j], m);
        }
      }
    }

    PresentationPtr  group_;
    std::vector<Int> base_;
    std::vector<Int> central_;
  };

  struct ElementHash {
    std::size_t operator()(Element const& u) const {
      return u.hash();
    }
  };

  inline Element identity(PresentationPtr const& p) {
    return Element(p);
  }

  inline Element multiply(Element const& u, Element const& v) {
    return u * v;
  }

  inline Element inverse(Element const& u) {
    std::vector<Int> neg(u.base_exponents().size());
    for (std::size_t i = 0; i < neg.size(); ++i) {
      neg[i] = -u.base_exponents()[i];
    }
    Element b(u.group(), neg, std::vector<Int>(u.central_exponents().size()));
    // u * b lies in the central tier; cancel it.
    Element          t = u * b;
    std::vector<Int> c(t.central_exponents().size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      c[j] = b.central_exponents()[j] - t.central_exponents()[j];
    }
    return Element(u.group(), b.base_exponents(), c);
  }

  inline Element power(Element const& u, Int n) {
    Element base = u;
    if (n < 0) {
      base = inverse(u);
      n    = -n;
    }
    Element result(u.group());
    while (n > 0) {
      if ((n & 1) != 0) {
        result = result * base;
      }
      n >>= 1;
      if (n > 0) {
        base = base * base;
      }
    }
    return result;
  }

  // [u, v] = u^-1 v^-1 u v
  inline Element commutator(Element const& u, Element const& v) {
    if (!same_group(u, v)) {
      throw MismatchedGroups();
    }
    return inverse(u) * inverse(v) * u * v;
  }

  inline Element conjugate(Element const& u, Element const& g) {
    return inverse(g) * u * g;
  }

  // Least n > 0 with u^n = e, or nullopt for infinite order.
  inline std::optional<Int> order_of_element(Element const& u) {
    Presentation const& p = u.presentation();
    Int                 k = 1;
    for (std::size_t i = 0; i < p.number_of_base(); ++i) {
      Int const& a = u.base_exponents()[i];
      if (a == 0) {
        continue;
      }
      Int const& m = p.base_order(i);
      if (m == 0) {
        return std::nullopt;
      }
      k = lcm(k, m / gcd(a, m));
    }
    Element c = power(u, k);
    Int     l = 1;
    for (std::size_t j = 0; j < p.number_of_central(); ++j) {
      Int const& a = c.central_exponents()[j];
      if (a == 0) {
        continue;
      }
      Int const& m = p.central_order(j);
      if (m == 0) {
        return std::nullopt;
      }
      l = lcm(l, m / gcd(a, m));
    }
    return k * l;
  }

  // Forward range over all elements of a finite presentation.  The order is
  // colexicographic on (base exponents, central exponents): the first
  // coordinate varies fastest.  Every range restarts from the identity.
  class ElementRange {
   public:
    class iterator {
     public:
      using iterator_category = std::forward_iterator_tag;
      using value_type        = Element;
      using difference_type   = std::ptrdiff_t;
      using pointer           = Element const*;
      using reference         = Element const&;

      iterator() = default;

      reference operator*() const {
        return current_;
      }
      pointer operator->() const {
        return &current_;
      }

      iterator& operator++() {
        advance();
        return *this;
      }
      iterator operator++(int) {
        iterator tmp = *this;
        advance();
        return tmp;
      }

      bool operator==(iterator const& that) const {
        return done_ == that.done_ && (done_ || counter_ == that.counter_);
      }
      bool operator!=(iterator const& that) const {
        return !(*this == that);
      }

     private:
      friend class ElementRange;

      explicit iterator(PresentationPtr p) : group_(std::move(p)), done_(false) {
        counter_.assign(group_->number_of_base() + group_->number_of_central(), 0);
        current_ = Element(group_);
      }

      void advance() {
        std::size_t n = group_->number_of_base();
        for (std::size_t k = 0; k < counter_.size(); ++k) {
          Int const& m = k < n ? group_->base_order(k) : group_->central_order(k - n);
          if (++counter_[k] < m) {
            current_ = make();
            return;
          }
          counter_[k] = 0;
        }
        done_ = true;
      }

      Element make() const {
        std::size_t      n = group_->number_of_base();
        std::vector<Int> b(counter_.begin(), counter_.begin() + n);
        std::vector<Int> c(counter_.begin() + n, counter_.end());
        return Element(group_, std::move(b), std::move(c));
      }

      PresentationPtr  group_;
      std::vector<Int> counter_;
      Element          current_;
      bool             done_ = true;
    };

    explicit ElementRange(PresentationPtr p) : group_(std::move(p)) {
      if (!group_->is_finite()) {
        throw InfiniteGroupError("cannot enumerate the infinite group " + group_->name());
      }
    }

    iterator begin() const {
      // A generator of order 1 (or none at all) still leaves the identity.
      return iterator(group_);
    }
    iterator end() const {
      return iterator();
    }

   private:
    PresentationPtr group_;
  };

  inline ElementRange enumerate_elements(PresentationPtr const& p) {
    return ElementRange(p);
  }

  inline std::vector<Element> all_elements(PresentationPtr const& p) {
    std::vector<Element> out;
    for (auto const& u : enumerate_elements(p)) {
      out.push_back(u);
    }
    return out;
  }

  // Position of u in the enumeration order of its (finite) group.
  inline std::size_t element_index(Element const& u) {
    Presentation const& p     = u.presentation();
    std::size_t         index = 0;
    std::size_t         scale = 1;
    for (std::size_t i = 0; i < p.number_of_base(); ++i) {
      index += static_cast<std::size_t>(u.base_exponents()[i]) * scale;
      scale *= static_cast<std::size_t>(p.base_order(i));
    }
    for (std::size_t j = 0; j < p.number_of_central(); ++j) {
      index += static_cast<std::size_t>(u.central_exponents()[j]) * scale;
      scale *= static_cast<std::size_t>(p.central_order(j));
    }
    return index;
  }

  // Exponent of a finite group: lcm of all element orders.
  inline Int group_exponent(PresentationPtr const& p) {
    Int e = 1;
    for (auto const& u : enumerate_elements(p)) {
      e = lcm(e, *order_of_element(u));
    }
    return e;
  }

  inline std::vector<Element> generators(PresentationPtr const& p) {
    std::vector<Element> out;
    for (std::size_t i = 0; i < p->number_of_base(); ++i) {
      out.push_back(Element::base_generator(p, i));
    }
    for (std::size_t j = 0; j < p->number_of_central(); ++j) {
      out.push_back(Element::central_generator(p, j));
    }
    return out;
  }

}  // namespace nilamalg

template <>
struct std::hash<nilamalg::Element> {
  std::size_t operator()(nilamalg::Element const& u) const {
    return u.hash();
  }
};

#endif  // NILAMALG_ELEMENT_HPP_

#ifndef NILAMALG_PRESENTATION_HPP_
#define NILAMALG_PRESENTATION_HPP_

// Two-tier power-commutator presentations of nilpotent groups of class at
// most two.
//
// A presentation has base generators g_1, ..., g_n and central generators
// z_1, ..., z_c.  Every element has the normal form
//
//     g_1^a_1 ... g_n^a_n z_1^c_1 ... z_c^c_c
//
// with a_i in [0, m_i) when g_i has finite order m_i (unbounded when the
// order is 0, i.e. infinite) and likewise for the c_j.  The defining
// relations are
//
//     [g_j, g_i] = w_ji      (j > i, w_ji a word in the z's)
//     g_i^m_i    = p_i       (m_i > 0, p_i a word in the z's)
//     z_j^n_j    = e         (n_j > 0)
//
// and the z's are central.  Because every relator lands in the central
// tier the group is automatically of class at most two.
//
// Commutators are [u, v] = u^-1 v^-1 u v, so a relation [y, x] = z means
// [x, y] = z^-1.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace nilamalg {

  struct Generator {
    std::string name;
    Int         order;  // 0 encodes infinite order
  };

  class Presentation;
  using PresentationPtr = std::shared_ptr<Presentation const>;

  // Exponent vector over the central generators.
  using CentralVector = std::vector<Int>;

  class Presentation {
   public:
    std::string const& name() const noexcept {
      return name_;
    }

    std::size_t number_of_base() const noexcept {
      return base_.size();
    }
    std::size_t number_of_central() const noexcept {
      return central_.size();
    }

    std::vector<Generator> const& base_generators() const noexcept {
      return base_;
    }
    std::vector<Generator> const& central_generators() const noexcept {
      return central_;
    }

    Int const& base_order(std::size_t i) const {
      return base_[i].order;
    }
    Int const& central_order(std::size_t j) const {
      return central_[j].order;
    }

    // w_ji for j > i; the zero vector when no relation was given.
    CentralVector const& comm(std::size_t j, std::size_t i) const {
      return comm_[j * base_.size() + i];
    }

    // p_i, meaningful only for finite-order base generators.
    CentralVector const& pow(std::size_t i) const {
      return pow_[i];
    }

    bool has_comm(std::size_t j, std::size_t i) const {
      return !is_zero(comm(j, i));
    }
    bool has_pow(std::size_t i) const {
      return !is_zero(pow(i));
    }

    bool is_finite() const {
      for (auto const& g : base_) {
        if (g.order == 0) {
          return false;
        }
      }
      for (auto const& g : central_) {
        if (g.order == 0) {
          return false;
        }
      }
      return true;
    }

    // Product of all generator orders, nullopt if infinite.
    std::optional<Int> order() const {
      if (!is_finite()) {
        return std::nullopt;
      }
      Int n = 1;
      for (auto const& g : base_) {
        n *= g.order;
      }
      for (auto const& g : central_) {
        n *= g.order;
      }
      return n;
    }

    // Index of a generator by name as (is_central, index).
    std::optional<std::pair<bool, std::size_t>> find(std::string const& name) const {
      for (std::size_t i = 0; i < base_.size(); ++i) {
        if (base_[i].name == name) {
          return std::make_pair(false, i);
        }
      }
      for (std::size_t j = 0; j < central_.size(); ++j) {
        if (central_[j].name == name) {
          return std::make_pair(true, j);
        }
      }
      return std::nullopt;
    }

    bool same_structure(Presentation const& that) const {
      auto same_gens = [](std::vector<Generator> const& a, std::vector<Generator> const& b) {
        if (a.size() != b.size()) {
          return false;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i].name != b[i].name || a[i].order != b[i].order) {
            return false;
          }
        }
        return true;
      };
      return same_gens(base_, that.base_) && same_gens(central_, that.central_)
             && comm_ == that.comm_ && pow_ == that.pow_;
    }

   private:
    friend class PresentationBuilder;

    static bool is_zero(CentralVector const& v) {
      for (auto const& x : v) {
        if (x != 0) {
          return false;
        }
      }
      return true;
    }

    std::string                name_;
    std::vector<Generator>     base_;
    std::vector<Generator>     central_;
    std::vector<CentralVector> comm_;  // dense n x n, only j > i used
    std::vector<CentralVector> pow_;
  };

  // Accumulates generators and relations, validates, then freezes the
  // result into an immutable shared Presentation.
  class PresentationBuilder {
   public:
    explicit PresentationBuilder(std::string name = "G") : name_(std::move(name)) {}

    PresentationBuilder& base(std::string name, Int order) {
      check_new_name(name, order);
      base_.push_back({std::move(name), std::move(order)});
      return *this;
    }

    PresentationBuilder& central(std::string name, Int order) {
      check_new_name(name, order);
      central_.push_back({std::move(name), std::move(order)});
      return *this;
    }

    // [g_j, g_i] = w for base indices j != i; stored so that the larger
    // index comes first, inverting w if needed.
    PresentationBuilder& comm(std::size_t j, std::size_t i, CentralVector w) {
      if (j >= base_.size() || i >= base_.size() || i == j) {
        throw InvalidArgument("commutator relation needs two distinct base generators");
      }
      if (w.size() > central_.size()) {
        throw InvalidArgument("commutator value longer than the central tier");
      }
      if (j < i) {
        for (auto& x : w) {
          x = -x;
        }
        std::swap(i, j);
      }
      comms_[{j, i}] = std::move(w);
      return *this;
    }

    PresentationBuilder& pow(std::size_t i, CentralVector w) {
      if (i >= base_.size()) {
        throw InvalidArgument("power relation on unknown base generator");
      }
      if (w.size() > central_.size()) {
        throw InvalidArgument("power value longer than the central tier");
      }
      pows_[i] = std::move(w);
      return *this;
    }

    std::size_t number_of_base() const noexcept {
      return base_.size();
    }
    std::size_t number_of_central() const noexcept {
      return central_.size();
    }
    std::vector<Generator> const& base_generators() const noexcept {
      return base_;
    }
    std::vector<Generator> const& central_generators() const noexcept {
      return central_;
    }

    PresentationPtr build() const {
      auto p      = std::make_shared<Presentation>();
      p->name_    = name_;
      p->base_    = base_;
      p->central_ = central_;
      std::size_t n = base_.size(), c = central_.size();
      p->comm_.assign(n * n, CentralVector(c));
      p->pow_.assign(n, CentralVector(c));
      for (auto const& [key, w] : comms_) {
        p->comm_[key.first * n + key.second] = normalise(w);
      }
      for (auto const& [i, w] : pows_) {
        if (base_[i].order == 0) {
          throw InvalidArgument("power relation on infinite-order generator "
                                + base_[i].name);
        }
        p->pow_[i] = normalise(w);
      }
      return p;
    }

   private:
    void check_new_name(std::string const& name, Int const& order) const {
      if (name.empty()) {
        throw InvalidArgument("empty generator name");
      }
      if (name == "e") {
        throw InvalidArgument("'e' denotes the identity and cannot name a generator");
      }
      if (order < 0) {
        throw InvalidArgument("negative order for generator " + name);
      }
      for (auto const& g : base_) {
        if (g.name == name) {
          throw InvalidArgument("duplicate generator name " + name);
        }
      }
      for (auto const& g : central_) {
        if (g.name == name) {
          throw InvalidArgument("duplicate generator name " + name);
        }
      }
    }

    CentralVector normalise(CentralVector w) const {
      w.resize(central_.size());
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (central_[j].order != 0) {
          w[j] = mod_floor(w[j], central_[j].order);
        }
      }
      return w;
    }

    std::string                                         name_;
    std::vector<Generator>                              base_;
    std::vector<Generator>                              central_;
    std::map<std::pair<std::size_t, std::size_t>, CentralVector> comms_;
    std::map<std::size_t, CentralVector>                pows_;
  };

}  // namespace nilamalg

#endif  // NILAMALG_PRESENTATION_HPP_

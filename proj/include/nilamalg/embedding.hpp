#ifndef NILAMALG_EMBEDDING_HPP_
#define NILAMALG_EMBEDDING_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "element.hpp"
#include "errors.hpp"
#include "presentation.hpp"
#include "subgroup.hpp"
#include "word.hpp"

namespace nilamalg {

  enum class Injectivity {
    coordinate_inclusion,  // generators go to distinct generators of equal order
    finite_verified,       // |image| == |source| by enumeration
    not_injective,
    unverified
  };

  inline std::string to_string(Injectivity s) {
    switch (s) {
      case Injectivity::coordinate_inclusion: return "coordinate-inclusion";
      case Injectivity::finite_verified: return "finite-verified";
      case Injectivity::not_injective: return "not-injective";
      default: return "unverified";
    }
  }

  struct EmbeddingCertificate {
    bool                       homomorphism = true;
    std::optional<std::string> violated_relation;
    Injectivity                injectivity = Injectivity::unverified;

    bool certified_injective() const {
      return homomorphism
             && (injectivity == Injectivity::coordinate_inclusion
                 || injectivity == Injectivity::finite_verified);
    }
  };

  namespace detail {
    inline Element apply_images(PresentationPtr const&      target,
                                std::vector<Element> const& images,
                                Presentation const&         source,
                                Element const&              d) {
      Element     out(target);
      std::size_t n = source.number_of_base();
      for (std::size_t i = 0; i < n; ++i) {
        if (d.base_exponents()[i] != 0) {
          out = out * power(images[i], d.base_exponents()[i]);
        }
      }
      for (std::size_t j = 0; j < source.number_of_central(); ++j) {
        if (d.central_exponents()[j] != 0) {
          out = out * power(images[n + j], d.central_exponents()[j]);
        }
      }
      return out;
    }

    inline Element central_image(PresentationPtr const&      target,
                                 std::vector<Element> const& images,
                                 std::size_t                 n,
                                 CentralVector const&        w) {
      Element out(target);
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] != 0) {
          out = out * power(images[n + j], w[j]);
        }
      }
      return out;
    }

    // Name of the first defining relation of `source` not respected by the
    // generator images, if any.
    inline std::optional<std::string> violated_relation(PresentationPtr const&      source,
                                                        PresentationPtr const&      target,
                                                        std::vector<Element> const& images) {
      Presentation const& s = *source;
      std::size_t         n = s.number_of_base(), c = s.number_of_central();
      auto                name = [&](std::size_t k) {
        return k < n ? s.base_generators()[k].name : s.central_generators()[k - n].name;
      };
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          Element lhs = commutator(images[j], images[i]);
          Element rhs = central_image(target, images, n, s.comm(j, i));
          if (lhs != rhs) {
            return "[" + name(j) + ", " + name(i) + "] = "
                   + to_string(Element(source, std::vector<Int>(n), s.comm(j, i)));
          }
        }
        if (s.base_order(j) != 0) {
          Element lhs = power(images[j], s.base_order(j));
          Element rhs = central_image(target, images, n, s.pow(j));
          if (lhs != rhs) {
            return name(j) + "^" + s.base_order(j).str() + " = "
                   + to_string(Element(source, std::vector<Int>(n), s.pow(j)));
          }
        }
      }
      for (std::size_t j = 0; j < c; ++j) {
        if (s.central_order(j) != 0 && !power(images[n + j], s.central_order(j)).is_identity()) {
          return name(n + j) + "^" + s.central_order(j).str() + " = e";
        }
        for (std::size_t k = 0; k < n + c; ++k) {
          if (!commutator(images[n + j], images[k]).is_identity()) {
            return "[" + name(n + j) + ", " + name(k) + "] = e";
          }
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  // A homomorphism given by generator images (base generators of the source
  // first, then its central generators).  Relation preservation is checked
  // on construction; injectivity is certified where possible.
  class Embedding {
   public:
    Embedding() = default;

    Embedding(PresentationPtr source, PresentationPtr target, std::vector<Element> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
      if (images_.size() != source_->number_of_base() + source_->number_of_central()) {
        throw InvalidArgument("generator-image map is not total on " + source_->name());
      }
      for (auto const& g : images_) {
        if (!target_->same_structure(g.presentation())) {
          throw MismatchedGroups();
        }
      }
      if (auto bad = detail::violated_relation(source_, target_, images_)) {
        throw RelationNotPreserved("map " + source_->name() + " -> " + target_->name()
                                   + " does not preserve the relation " + *bad);
      }
      certify();
    }

    PresentationPtr const& source() const noexcept {
      return source_;
    }
    PresentationPtr const& target() const noexcept {
      return target_;
    }
    std::vector<Element> const& images() const noexcept {
      return images_;
    }

    EmbeddingCertificate const& certificate() const noexcept {
      return certificate_;
    }

    Element operator()(Element const& d) const {
      if (!source_->same_structure(d.presentation())) {
        throw MismatchedGroups();
      }
      return detail::apply_images(target_, images_, *source_, d);
    }

    // The unique source element mapping to u, when u is in the image and
    // the map is certified injective.
    std::optional<Element> preimage(Element const& u) const {
      if (certificate_.injectivity == Injectivity::coordinate_inclusion) {
        return coordinate_preimage(u);
      }
      if (certificate_.injectivity == Injectivity::finite_verified) {
        auto it = table_.find(u);
        if (it == table_.end()) {
          return std::nullopt;
        }
        return it->second;
      }
      throw PreconditionError("preimages need a certified injective map " + source_->name()
                              + " -> " + target_->name());
    }

    Subgroup image() const {
      return Subgroup(target_, images_);
    }

   private:
    void certify() {
      if (is_generator_to_generator()) {
        certificate_.injectivity = Injectivity::coordinate_inclusion;
        return;
      }
      if (!source_->is_finite()) {
        certificate_.injectivity = Injectivity::unverified;
        return;
      }
      for (auto const& d : enumerate_elements(source_)) {
        table_.emplace((*this)(d), d);
      }
      certificate_.injectivity = table_.size() == static_cast<std::size_t>(*source_->order())
                                     ? Injectivity::finite_verified
                                     : Injectivity::not_injective;
      if (certificate_.injectivity == Injectivity::not_injective) {
        table_.clear();
      }
    }

    // Generator slot of a target element that is a single generator, as
    // (is_central, index).
    static std::optional<std::pair<bool, std::size_t>> single_generator(Element const& u) {
      std::optional<std::pair<bool, std::size_t>> found;
      auto                                        scan = [&](std::vector<Int> const& v, bool central) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i] == 0) {
            continue;
          }
          if (v[i] != 1 || found) {
            return false;
          }
          found = std::make_pair(central, i);
        }
        return true;
      };
      if (!scan(u.base_exponents(), false) || !scan(u.central_exponents(), true)) {
        return std::nullopt;
      }
      return found;
    }

    bool is_generator_to_generator() {
      std::size_t         n = source_->number_of_base();
      std::vector<bool>   used_base(target_->number_of_base());
      std::vector<bool>   used_central(target_->number_of_central());
      base_slot_.clear();
      central_slot_.clear();
      for (std::size_t k = 0; k < images_.size(); ++k) {
        bool central = k >= n;
        auto slot    = single_generator(images_[k]);
        if (!slot || slot->first != central) {
          return false;
        }
        auto&      used   = central ? used_central : used_base;
        Int const& source_order
            = central ? source_->central_order(k - n) : source_->base_order(k);
        Int const& target_order = central ? target_->central_order(slot->second)
                                          : target_->base_order(slot->second);
        if (used[slot->second] || source_order != target_order) {
          return false;
        }
        used[slot->second] = true;
        (central ? central_slot_ : base_slot_).push_back(slot->second);
      }
      return true;
    }

    std::optional<Element> coordinate_preimage(Element const& u) const {
      if (!target_->same_structure(u.presentation())) {
        throw MismatchedGroups();
      }
      std::size_t      n = source_->number_of_base();
      std::vector<Int> a(n);
      std::vector<bool> hit(target_->number_of_base());
      for (std::size_t i = 0; i < n; ++i) {
        a[i]               = u.base_exponents()[base_slot_[i]];
        hit[base_slot_[i]] = true;
      }
      for (std::size_t t = 0; t < hit.size(); ++t) {
        if (!hit[t] && u.base_exponents()[t] != 0) {
          return std::nullopt;
        }
      }
      Element base_part(source_, a, std::vector<Int>(source_->number_of_central()));
      Element rest = inverse((*this)(base_part)) * u;
      if (!rest.in_central_tier()) {
        return std::nullopt;
      }
      std::vector<Int>  c(source_->number_of_central());
      std::vector<bool> chit(target_->number_of_central());
      for (std::size_t j = 0; j < c.size(); ++j) {
        c[j]                  = rest.central_exponents()[central_slot_[j]];
        chit[central_slot_[j]] = true;
      }
      for (std::size_t t = 0; t < chit.size(); ++t) {
        if (!chit[t] && rest.central_exponents()[t] != 0) {
          return std::nullopt;
        }
      }
      Element d = base_part * Element(source_, std::vector<Int>(n), c);
      if ((*this)(d) != u) {
        return std::nullopt;
      }
      return d;
    }

    PresentationPtr                                 source_;
    PresentationPtr                                 target_;
    std::vector<Element>                            images_;
    EmbeddingCertificate                            certificate_;
    std::vector<std::size_t>                        base_slot_;
    std::vector<std::size_t>                        central_slot_;
    std::unordered_map<Element, Element, ElementHash> table_;
  };

  inline EmbeddingCertificate const& check_embedding(Embedding const& e) {
    return e.certificate();
  }

  // Relation check without constructing an Embedding.
  inline EmbeddingCertificate check_embedding(PresentationPtr const&      source,
                                              PresentationPtr const&      target,
                                              std::vector<Element> const& images) {
    EmbeddingCertificate cert;
    if (auto bad = detail::violated_relation(source, target, images)) {
      cert.homomorphism      = false;
      cert.violated_relation = bad;
      cert.injectivity       = Injectivity::unverified;
      return cert;
    }
    return Embedding(source, target, images).certificate();
  }

  inline Embedding identity_embedding(PresentationPtr const& p) {
    return Embedding(p, p, generators(p));
  }

  // g after f
  inline Embedding compose(Embedding const& g, Embedding const& f) {
    std::vector<Element> images;
    for (auto const& x : f.images()) {
      images.push_back(g(x));
    }
    return Embedding(f.source(), g.target(), std::move(images));
  }

}  // namespace nilamalg

#endif  // NILAMALG_EMBEDDING_HPP_

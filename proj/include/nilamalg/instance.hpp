#ifndef NILAMALG_INSTANCE_HPP_
#define NILAMALG_INSTANCE_HPP_

#include <string>
#include <utility>

#include "embedding.hpp"
#include "errors.hpp"
#include "presentation.hpp"

namespace nilamalg {

  // An amalgam of A and B over D, given by the two inclusions of D.
  // Elements of D in the conditions are always elements of the abstract D,
  // reached from A or B through the inverses of the inclusions.
  struct AmalgamInstance {
    PresentationPtr A;
    PresentationPtr B;
    PresentationPtr D;
    Embedding       iota_A;
    Embedding       iota_B;

    AmalgamInstance(PresentationPtr a,
                    PresentationPtr b,
                    PresentationPtr d,
                    Embedding       ia,
                    Embedding       ib)
        : A(std::move(a)),
          B(std::move(b)),
          D(std::move(d)),
          iota_A(std::move(ia)),
          iota_B(std::move(ib)) {
      check(iota_A, A, "iota_A");
      check(iota_B, B, "iota_B");
    }

    AmalgamInstance swapped() const {
      return AmalgamInstance(B, A, D, iota_B, iota_A);
    }

    bool is_finite() const {
      return A->is_finite() && B->is_finite() && D->is_finite();
    }

   private:
    void check(Embedding const& e, PresentationPtr const& target, std::string const& what) const {
      if (!e.source()->same_structure(*D) || !e.target()->same_structure(*target)) {
        throw InvalidArgument(what + " does not map " + D->name() + " into " + target->name());
      }
      if (!e.certificate().certified_injective()) {
        throw PreconditionError(what + " is not certified injective ("
                                + to_string(e.certificate().injectivity) + ")");
      }
    }
  };

}  // namespace nilamalg

#endif  // NILAMALG_INSTANCE_HPP_

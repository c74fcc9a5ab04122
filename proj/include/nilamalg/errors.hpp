#ifndef NILAMALG_ERRORS_HPP_
#define NILAMALG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nilamalg {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Structurally invalid input: bad names, orders, dimensions.
  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  // A relation whose right-hand side is not a word in central generators.
  class MalformedRelation : public Error {
   public:
    using Error::Error;
  };

  class MismatchedGroups : public Error {
   public:
    MismatchedGroups()
        : Error("elements belong to different presentations") {}
  };

  // A generator-image map that does not respect a defining relation.
  class RelationNotPreserved : public Error {
   public:
    using Error::Error;
  };

  // A checker's hypothesis (normality, centrality, finiteness, ...) is unmet.
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  class InfiniteGroupError : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
  };

  // None of the implemented criteria applies to an instance.
  class Undecidable : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
  };

}  // namespace nilamalg

#endif  // NILAMALG_ERRORS_HPP_

#ifndef NILAMALG_NILAMALG_HPP_
#define NILAMALG_NILAMALG_HPP_

#include "amg.hpp"
#include "catalog.hpp"
#include "conditions.hpp"
#include "consistency.hpp"
#include "counterexample.hpp"
#include "element.hpp"
#include "embedding.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "integer.hpp"
#include "presentation.hpp"
#include "product.hpp"
#include "report.hpp"
#include "subgroup.hpp"
#include "word.hpp"
#include "zlinalg.hpp"

#endif  // NILAMALG_NILAMALG_HPP_

#pragma once

#include <vector>

#include "coxkl/kl.hpp"
#include "coxkl/paths.hpp"
#include "coxkl/reflection_order.hpp"

namespace coxkl {

/// A saturated chain starting at x_1, avoiding the second-length path gamma
/// that diverges at u, ending at an atom of [y, z] where y -> z is the
/// length-3 edge of gamma, with every element covering a vertex of gamma.
struct SupportingChain {
  std::vector<Element> elements;  // increasing
  std::vector<Element> witnesses; // witnesses[i] is on gamma and covered by elements[i]
  ElementPath longest;            // gamma_0
  ElementPath gamma;
  Element y;
  Element z;
};

/// Recursive construction on l(v). Throws WrongBranch when
/// d_{u,v} = d_{x_1,v} + 1, NotDeodhar when the order is not Deodhar for v,
/// and ConstructionFailed whenever a checked property fails.
SupportingChain supporting_chain(const KLEngine& kl, const Element& u, const Element& v, const ReflectionOrder& order);

/// Throws ConstructionFailed naming the first violated property.
void check_supporting_chain(const CoxeterSystem& sys, const SupportingChain& chain);

} // namespace coxkl

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "harmkern/domain.hpp"
#include "harmkern/kernel_transform.hpp"
#include "harmkern/symbol.hpp"

namespace harmkern {

using Json = nlohmann::ordered_json;

// {"kind","n","order","grades":[{"j","cap","terms":[{"coeff","coeff_im"?,"xp","xi","w","xn","yn"}]}]}
Json to_json(const BoundarySymbol& s);
BoundarySymbol symbol_from_json(const Json& j);

// Coefficients are lists of ["p/q", "monomial"] pairs where the monomial mixes
// jet variables with t (or u, v for Green expansions), e.g. "a1^2*t^3".
Json to_json(const KernelExpansion& e);
KernelExpansion kernel_from_json(const Json& j);

Json to_json(const JetPoly& p);
JetPoly jet_poly_from_json(const Json& j);

// "a1,a2,a3" (symbolic), "1/2,1/4" (exact), or a mix position by position.
// Decimal input is rejected.
DomainSpec parse_domain(int n, std::string_view jet);

}  // namespace harmkern

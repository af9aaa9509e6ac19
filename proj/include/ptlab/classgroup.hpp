// Divisor class groups of toric rings k[Q] as cokernels of the facet pairing
// Q^gp -> Z^facets, with l-primary and prime-to-p analysis.
#pragma once

#include "ptlab/monoid.hpp"

#include <map>
#include <vector>

namespace ptlab {

struct ClassGroupReport {
  FinAbelianGroup group;
  std::size_t facet_count = 0;
  Int torsion_order = 1;
  std::map<Int, FinAbelianGroup> ell_primary;  // primes dividing the torsion order
};

// Throws NotSaturated and NotSharp.
ClassGroupReport class_group(const AffineMonoid& Q);

// l-primary part of the torsion subgroup.
FinAbelianGroup ell_primary(const FinAbelianGroup& G, const Int& ell);

struct PrimeToPReport {
  Int p;
  FinAbelianGroup group;  // torsion with the p-part removed
  Int order = 1;
  std::vector<Int> primes;  // l != p with nontrivial l-primary part
  bool finite = true;
};

PrimeToPReport prime_to_p_report(const FinAbelianGroup& G, const Int& p);

std::vector<Int> prime_factors(Int n);

}  // namespace ptlab

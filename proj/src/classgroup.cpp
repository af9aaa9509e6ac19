#include "ptlab/classgroup.hpp"

#include "ptlab/error.hpp"

namespace ptlab {

std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  if (n < 0) n = -n;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

ClassGroupReport class_group(const AffineMonoid& Q) {
  if (!is_saturated(Q)) throw Error(ErrorCode::NotSaturated, "class group needs a saturated monoid");
  ConeData cd = cone_data(Q);
  if (!cd.pointed) throw Error(ErrorCode::NotSharp, "class group needs a sharp monoid");
  const std::size_t F = cd.facets.size();
  ClassGroupReport rep;
  rep.facet_count = F;
  // Column k is the image of the k-th basis vector of Q^gp.
  IntMatrix pairing(F, cd.rank());
  for (std::size_t i = 0; i < F; ++i)
    for (std::size_t k = 0; k < cd.rank(); ++k) pairing(i, k) = cd.facets[i][k];
  rep.group = abelian_quotient(IntMatrix::identity(F), pairing);
  rep.torsion_order = rep.group.torsion_order();
  for (const auto& l : prime_factors(rep.torsion_order)) rep.ell_primary[l] = ell_primary(rep.group, l);
  return rep;
}

FinAbelianGroup ell_primary(const FinAbelianGroup& G, const Int& ell) {
  IntVec parts;
  for (Int n : G.invariant_factors) {
    Int part = 1;
    while (n % ell == 0) {
      n /= ell;
      part *= ell;
    }
    parts.push_back(part);
  }
  return group_from_diagonal(parts, 0);
}

PrimeToPReport prime_to_p_report(const FinAbelianGroup& G, const Int& p) {
  PrimeToPReport rep;
  rep.p = p;
  IntVec parts;
  for (Int n : G.invariant_factors) {
    while (n % p == 0) n /= p;
    parts.push_back(n);
  }
  rep.group = group_from_diagonal(parts, 0);
  rep.order = rep.group.torsion_order();
  rep.primes = prime_factors(rep.order);
  rep.finite = rep.group.is_finite();
  return rep;
}

}  // namespace ptlab

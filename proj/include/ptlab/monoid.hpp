// Affine monoids inside scaled lattices (1/c^level) Z^d and their c-division
// layers Q^(i).
#pragma once

#include "ptlab/intlat.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ptlab {

// An exponent: coords / c^level.  Canonical form has the smallest level, so
// equality of canonical elements is equality of rational points.
struct MonoidElem {
  IntVec coords;
  std::size_t level = 0;

  auto operator<=>(const MonoidElem&) const = default;
  bool operator==(const MonoidElem&) const = default;

  bool is_zero() const;
};

Int ipow(const Int& base, std::size_t e);

MonoidElem canonical(MonoidElem e, const Int& c);
// Coordinates of e at a level >= e.level.
IntVec coords_at(const MonoidElem& e, std::size_t level, const Int& c);
MonoidElem elem_add(const MonoidElem& a, const MonoidElem& b, const Int& c);
// a - b as a point of the rational span (may leave the monoid).
MonoidElem elem_sub(const MonoidElem& a, const MonoidElem& b, const Int& c);
MonoidElem elem_scale(const MonoidElem& a, const Int& k, const Int& c);
// a / c^i
MonoidElem elem_divide(const MonoidElem& a, std::size_t i, const Int& c);
// Coordinate sum divided by c^level.
Rational degree(const MonoidElem& e, const Int& c);
// Rational coordinates, e.g. "(1/2,0,0,1/2)".
std::string elem_to_string(const MonoidElem& e, const Int& c);

struct AffineMonoid {
  std::size_t ambient_rank = 0;
  std::size_t level = 0;
  Int scale_base = 2;
  std::vector<IntVec> generators;

  bool operator==(const AffineMonoid&) const = default;

  static AffineMonoid free(std::size_t d, const Int& c);
  static AffineMonoid zero(std::size_t d, const Int& c);

  // Generator columns at the monoid's own level.
  IntMatrix generator_matrix() const;
  // The same monoid written at a higher level.
  AffineMonoid at_level(std::size_t new_level) const;
  // Nonzero generators only.
  std::vector<IntVec> nonzero_generators() const;
  void validate() const;
};

// Cone and lattice data in coordinates of a basis of Q^gp.
struct ConeData {
  IntMatrix basis;  // d x r, columns span Q^gp
  LatticeSolver solver;
  std::vector<IntVec> gens;    // generators in basis coordinates
  std::vector<IntVec> facets;  // primitive inner normals, basis coordinates
  std::vector<IntVec> rays;    // extreme rays when the cone is pointed
  bool pointed = true;
  IntVec grading;              // strictly positive on cone \ {0} when pointed

  std::size_t rank() const { return basis.cols(); }
  std::optional<IntVec> lattice_coords(const IntVec& ambient) const { return solver.solve(ambient); }
  bool in_cone(const IntVec& lattice) const;
};

ConeData cone_data(const AffineMonoid& Q);

// Extreme rays of {y in Q^dim : a . y >= 0 for all rows a}; the rows must
// have rank dim.  Rays are primitive and sorted.
std::vector<IntVec> extreme_rays(const std::vector<IntVec>& rows, std::size_t dim);

// Exact membership and enumeration for a fixed monoid.
class MonoidOracle {
 public:
  explicit MonoidOracle(AffineMonoid Q);

  const AffineMonoid& monoid() const { return Q_; }
  const ConeData& cone() const { return cone_; }
  bool saturated() const { return saturated_; }

  bool contains(const MonoidElem& x) const;
  bool in_group(const MonoidElem& x) const;
  // All elements of degree <= max_degree, canonical and sorted.
  std::vector<MonoidElem> enumerate(const Rational& max_degree) const;

 private:
  std::optional<IntVec> to_level(const MonoidElem& x) const;
  bool contains_lattice(const IntVec& y) const;

  AffineMonoid Q_;
  ConeData cone_;
  bool saturated_ = false;
};

bool is_sharp(const AffineMonoid& Q);
// Hilbert basis of cone(Q) cap Q^gp, in ambient coordinates at Q's level.
std::vector<IntVec> hilbert_basis(const AffineMonoid& Q);
bool is_saturated(const AffineMonoid& Q);
AffineMonoid saturate(const AffineMonoid& Q);
AffineMonoid p_divide(const AffineMonoid& Q, std::size_t i);
FinAbelianGroup layer_quotient(const AffineMonoid& Q, std::size_t i);
std::size_t dimension(const AffineMonoid& Q);

struct ExactnessResult {
  bool exact = true;
  std::optional<MonoidElem> witness;  // element of (Q')^gp cap Q outside Q'
  bool unconditional = false;         // decided by the cone criterion
};

ExactnessResult exactness(const AffineMonoid& Qp, const AffineMonoid& Q, const Rational& degree_bound = 8);
bool is_exact_submonoid(const AffineMonoid& Qp, const AffineMonoid& Q, const Rational& degree_bound = 8);

// Rows n_F with n_F . q = m_F <facet F, q> for a minimal positive integer m_F.
IntMatrix exact_embed_Nd(const AffineMonoid& Q);

class GradedDecomposition {
 public:
  GradedDecomposition(const AffineMonoid& Qp, const AffineMonoid& Q);

  const FinAbelianGroup& class_group() const { return group_; }
  // Class label: residues for the torsion factors followed by free coordinates.
  IntVec class_of(const MonoidElem& x) const;
  bool in_zero_component(const MonoidElem& x) const;

  template <class Coeff>
  std::map<MonoidElem, Coeff> retract(const std::map<MonoidElem, Coeff>& terms) const {
    std::map<MonoidElem, Coeff> out;
    for (const auto& [e, c] : terms)
      if (in_zero_component(e)) out.emplace(e, c);
    return out;
  }

 private:
  Int c_;
  std::size_t level_;
  ConeData cone_;
  SmithForm smith_;
  FinAbelianGroup group_;
};

GradedDecomposition graded_decomposition(const AffineMonoid& Qp, const AffineMonoid& Q);

}  // namespace ptlab

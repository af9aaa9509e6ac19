// Towers of truncated series rings with inclusion transitions, their
// reductions modulo J0 = I0 + pR, Frobenius projections, axioms (a)-(g) and
// perfectoid pillars.
#pragma once

#include "ptlab/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptlab {

struct TowerDesc {
  // R_0..R_m; transitions are the exponent inclusions R_i -> R_{i+1}.
  std::vector<SeriesRingDesc> levels;
  // Generator of I0 in R_0; empty means I0 = (0).
  std::vector<Term> base_ideal;

  bool operator==(const TowerDesc&) const = default;

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
};

struct Cutoff {
  Rational D;
  std::size_t N = 0;
  std::size_t depth = 0;

  bool operator==(const Cutoff&) const = default;
};

enum class MapKind { Zero, Monomial, BeyondCutoff, Undefined };

// Image of a basis monomial under a monomial map.
struct MonoMap {
  MapKind kind = MapKind::Zero;
  MonoidElem exponent;
};

class Tower {
 public:
  // Throws InvariantViolation for malformed descriptors and
  // NonMonomialReduction when I0 + pR is not a monomial ideal.
  explicit Tower(TowerDesc desc);

  const TowerDesc& desc() const { return desc_; }
  std::size_t depth() const { return desc_.depth(); }
  const Int& p() const { return desc_.levels.front().p; }
  Cutoff cutoff() const;

  const RingPtr& ring(std::size_t i) const { return rings_.at(i); }
  // R_i / J0 R_i.
  const RingPtr& quotient(std::size_t i) const { return quotients_.at(i); }
  // Monomial basis of R_i / J0 R_i up to the cutoff.
  const std::vector<MonoidElem>& basis(std::size_t i) const { return bases_.at(i); }

  // Exponent of the monomial generator of I0, absent when I0 = (0).
  const std::optional<MonoidElem>& base_generator() const { return base_gen_; }
  // Minimal monomial generators of J0.
  const std::vector<MonoidElem>& working_ideal() const { return j0_; }
  // The single generator of J0, when J0 is nonzero and principal.
  std::optional<MonoidElem> principal_generator() const;
  bool working_ideal_zero() const { return j0_.empty(); }

  // t_i mod J0 on a monomial of R_i / J0.
  MonoMap transition(std::size_t i, const MonoidElem& e) const;
  // Frobenius of R_i / J0 on a monomial.
  MonoMap frobenius(std::size_t i, const MonoidElem& e) const;
  // F_i: R_{i+1}/J0 -> R_i/J0 on a monomial, e^g -> e^{pg}.
  MonoMap projection(std::size_t i, const MonoidElem& e) const;

  Series transition_series(std::size_t i, const Series& x) const;
  // Throws AxiomViolation where F_i is undefined.
  Series projection_series(std::size_t i, const Series& x) const;

 private:
  TowerDesc desc_;
  std::vector<RingPtr> rings_;
  std::vector<RingPtr> quotients_;
  std::vector<std::vector<MonoidElem>> bases_;
  std::optional<MonoidElem> base_gen_;
  std::vector<MonoidElem> j0_;
};

enum class AxiomStatus { Pass, Fail, Skipped };

std::string_view axiom_status_name(AxiomStatus s);

struct AxiomEntry {
  std::string axiom;  // "a".."g"
  std::string check;  // sub-check label, e.g. "f-1"
  std::size_t level = 0;
  AxiomStatus status = AxiomStatus::Pass;
  std::optional<MonoidElem> witness;
  std::string detail;

  bool pass() const { return status != AxiomStatus::Fail; }
};

struct AxiomReport {
  Cutoff cutoff;
  std::vector<AxiomEntry> entries;

  bool all_pass() const;
  // Axioms with at least one failing entry, sorted.
  std::vector<std::string> failed_axioms() const;
  bool axiom_passes(const std::string& axiom) const;
};

// Axioms (a)-(c).
AxiomReport verify_purely_inseparable(const Tower& T);
// Axioms (d)-(g).  Checks that need F_i are skipped at levels where (b) or
// (c) fails.
AxiomReport verify_perfectoid(const Tower& T);
// (a)-(g), ordered by axiom and level.
AxiomReport verify_tower(const Tower& T);

class FrobProjection {
 public:
  FrobProjection(const Tower& T, std::size_t level);

  std::size_t level() const { return level_; }
  MonoMap on_monomial(const MonoidElem& e) const { return T_->projection(level_, e); }
  Series apply(const Series& x) const { return T_->projection_series(level_, x); }

 private:
  const Tower* T_;
  std::size_t level_;
};

// Throws AxiomViolation when t_i mod J0 o F_i = Frob fails on a basis monomial.
FrobProjection frobenius_projection(const Tower& T, std::size_t i);

struct DiagramCheck {
  std::size_t level = 0;
  std::string identity;  // "tF": t_i o F_i on B_{i+1}; "Ft": F_i o t_i on B_i
  std::size_t checked = 0;
  std::optional<MonoidElem> failure;

  bool ok() const { return !failure; }
};

// Both Frobenius identities on every basis monomial of every level.
std::vector<DiagramCheck> diagram_checks(const Tower& T);

struct PillarSystem {
  bool zero_ideal = false;
  // Exponents psi_i with p^i psi_i = generator of J0; empty for I0 = (0).
  std::vector<MonoidElem> exponents;
  // f_i in R_i.
  std::vector<Series> generators;
  // F_i(f_{i+1} mod J0) = f_i mod J0.
  std::vector<bool> compatible;
  // I_{i+1}^p = I_i R_{i+1} on generators.
  std::vector<bool> ideal_chain;
  // Number of monomials psi in M_i of degree <= D with p^i psi = generator.
  std::vector<std::size_t> candidates;
};

// Throws PillarNotFound when a level has no monomial pillar.
PillarSystem pillar_system(const Tower& T);

}  // namespace ptlab

// Small tilts as truncated inverse limits of the mod-J0 layers along the
// Frobenius projections.
#pragma once

#include "ptlab/tower.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ptlab {

// (a_0, a_1, ...) with a_i in R_{home+i} / J0 and F(a_{i+1}) = a_i.
class TiltElem {
 public:
  // Throws IncompatibleComponents.
  static TiltElem construct(const Tower& T, std::size_t home, std::vector<Series> components);
  // The full-length sequence obtained from a top component in R_m / J0.
  static TiltElem from_top(const Tower& T, std::size_t home, const Series& top);
  static TiltElem zero(const Tower& T, std::size_t home);
  static TiltElem one(const Tower& T, std::size_t home);

  const Tower& tower() const { return *T_; }
  std::size_t home() const { return home_; }
  std::size_t length() const { return comps_.size(); }
  const std::vector<Series>& components() const { return comps_; }
  // Phi_k: the component at level home + k.
  const Series& project(std::size_t k) const;
  bool is_zero() const;

  // Equality on the common components.
  bool agrees_with(const TiltElem& o) const;
  bool operator==(const TiltElem& o) const;

 private:
  TiltElem(const Tower& T, std::size_t home, std::vector<Series> comps)
      : T_(&T), home_(home), comps_(std::move(comps)) {}

  const Tower* T_;
  std::size_t home_;
  std::vector<Series> comps_;

  friend TiltElem te_add(const TiltElem&, const TiltElem&);
  friend TiltElem te_mul(const TiltElem&, const TiltElem&);
  friend TiltElem te_frobenius(const TiltElem&);
  friend TiltElem tilt_transition(const TiltElem&);
  friend TiltElem tilt_projection(const TiltElem&);
  friend TiltElem tilt_shift(const TiltElem&);
};

TiltElem te_add(const TiltElem& x, const TiltElem& y);
TiltElem te_mul(const TiltElem& x, const TiltElem& y);
TiltElem te_pow(const TiltElem& x, std::size_t n);
TiltElem te_frobenius(const TiltElem& x);
// t: home j -> home j+1, applied componentwise; the top component is dropped.
TiltElem tilt_transition(const TiltElem& x);
// F: home j+1 -> home j, applied componentwise.
TiltElem tilt_projection(const TiltElem& x);
// Inverse of F: home j -> home j+1, (a_0, a_1, ...) -> (a_1, a_2, ...).
TiltElem tilt_shift(const TiltElem& x);

// f_j = (f_j, f_{j+1}, ..., f_m) mod J0.
TiltElem pillar_tilt(const Tower& T, const PillarSystem& ps, std::size_t j);

struct BasisCorrespondence {
  std::size_t level = 0;
  std::string ideal;  // "I0" or "Ij"
  // Top exponent of a monomial tilt -> its image under Phi_0.
  std::vector<std::pair<MonoidElem, MonoidElem>> pairs;
  bool bijective = true;
  std::optional<MonoidElem> witness;
  std::string detail;
};

// Phi_0 on monomial tilts modulo I0 R_j^flat against the basis of R_j / I0 R_j.
BasisCorrespondence tilt_mod_pillar_iso(const Tower& T, std::size_t j);
// The same modulo the pillar tilt I_j^flat against the basis of R_j / I_j.
BasisCorrespondence tilt_mod_own_pillar(const Tower& T, std::size_t j);

struct CheckEntry {
  std::string name;
  bool pass = true;
  std::optional<MonoidElem> witness;
  std::string detail;
};

struct TiltReport {
  std::size_t level = 0;
  Cutoff cutoff;
  std::vector<CheckEntry> checks;

  bool all_pass() const;
};

// Generator criterion for I_j^flat, (f_{j+1}^flat)^p = f_j^flat, and the
// I0-torsion comparison between R_j and its tilt.
TiltReport verify_exactstilt(const Tower& T, std::size_t j);

// One report per level j < m: shift inverts F^flat, Frobenius = t^flat o
// F^flat, and F^flat is a ring map.
std::vector<TiltReport> inverse_perfection_is_perfect(const Tower& T);

}  // namespace ptlab

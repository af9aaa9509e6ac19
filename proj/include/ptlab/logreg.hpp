// Log-regular presentations C(k)[[Q + N^r]]/(p - f), their towers and tilts,
// and the regularity toolkit over C(F_p)[[x_1..x_d]] and F_p[[x_1..x_d]].
#pragma once

#include "ptlab/tilt.hpp"
#include "ptlab/tower.hpp"

#include <string>
#include <vector>

namespace ptlab {

struct LogRegPresentation {
  std::string name = "custom";
  AffineMonoid Q;
  std::size_t r = 0;
  Int p = 2;
  // Exponents in Q + N^r coordinates.
  std::vector<Term> f;
  // Names of the monoid generators followed by the free variables.
  std::vector<std::string> labels;

  bool operator==(const LogRegPresentation&) const = default;

  // Throws InvalidPresentation.
  void validate() const;
};

// Q = 0, r = d, f = x_1.
LogRegPresentation unramified_rlr(const Int& p, std::size_t d);
// Q = <x, y, z, w> with xy = zw, r = 0, f = w.
LogRegPresentation quadric(const Int& p);
// "unramified_rlr" or "quadric"; throws InvalidArgument otherwise.
LogRegPresentation preset(const std::string& name, const Int& p, std::size_t d);

// C(k)[[Q^(i) + (N^r)^(i)]]/(p - f).
SeriesRingDesc level_desc(const LogRegPresentation& P, std::size_t i, const Rational& D, std::size_t N);
// Levels 0..depth with inclusion transitions and I0 = (p).
TowerDesc build_tower(const LogRegPresentation& P, std::size_t depth, const Rational& D, std::size_t N);
// k[[Q^(i) + (N^r)^(i)]] with I0 generated by f mod p.
TowerDesc predict_tilt(const LogRegPresentation& P, std::size_t depth, const Rational& D);

struct TiltVerification {
  Cutoff cutoff;
  std::vector<CheckEntry> checks;

  bool all_pass() const;
};

TiltVerification verify_tilt(const LogRegPresentation& P, std::size_t depth, const Rational& D, std::size_t N);

struct KatoDimReport {
  std::size_t dim_R = 0;
  std::size_t dim_R_mod_I = 0;  // dim R / I_alpha
  std::size_t dim_Q = 0;
  bool consistent = false;
};

KatoDimReport kato_dim_check(const LogRegPresentation& P);

// C(F_p)[[x_1..x_d]] (mixed) or F_p[[x_1..x_d]] (equal).
struct RegularBase {
  std::size_t d = 0;
  Int p = 2;
  Characteristic characteristic = Characteristic::Mixed;
  bool perfect_residue_field = true;

  // Ring used to write elements: precision 2 and cutoff 2 suffice for linear parts.
  RingPtr ring() const;
};

struct OmegaModule {
  std::size_t d = 0;
  Int p = 2;
  std::string case_tag;  // "p not in m^2" or "equal characteristic"
  std::size_t dimension = 0;
  std::vector<std::string> basis_labels;
};

// Throws UnsupportedBase for imperfect residue fields.
OmegaModule omega_dim(const RegularBase& A);
// Coordinates of the class of x in Omega_A over F_p: the p-digit of the
// constant term (mixed case) followed by the linear coefficients.
std::vector<Int> d_class(const RegularBase& A, const Series& x);
bool is_maximal_sequence(const RegularBase& A, const std::vector<Series>& elems);
// Regularity of A[T_1..T_n]/(T_i^{e_i} - f_i) at its maximal ideal.
bool kummer_regularity(const RegularBase& A, const std::vector<Series>& f, const std::vector<std::size_t>& e);

// Rank over F_p of integer rows reduced mod p.
std::size_t rank_mod_p(std::vector<std::vector<Int>> rows, const Int& p);

}  // namespace ptlab

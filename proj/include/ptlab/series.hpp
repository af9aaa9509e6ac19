// Truncated monoid power series C(k)[[Q^(i) + (N^r)^(i)]]/(p - f) and their
// equal-characteristic counterparts k[[...]]/(monomials).
#pragma once

#include "ptlab/monoid.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace ptlab {

enum class Characteristic { Mixed, Equal };

struct Term {
  MonoidElem exponent;
  Int coeff;

  bool operator==(const Term&) const = default;
};

struct SeriesRingDesc {
  AffineMonoid monoid_part;
  std::size_t free_rank = 0;
  std::size_t free_level = 0;
  Int p = 2;
  std::size_t precision = 3;
  Rational cutoff = 6;
  Characteristic characteristic = Characteristic::Mixed;
  // f in p - f, exponents in combined coordinates; absent for Cohen-ring
  // series and for equal characteristic.
  std::optional<std::vector<Term>> relation_f;
  // Generators of a monomial ideal that is quotiented out.
  std::vector<MonoidElem> monomial_relations;

  bool operator==(const SeriesRingDesc&) const = default;

  std::size_t exponent_rank() const { return monoid_part.ambient_rank + free_rank; }
  void validate() const;
};

// Q^(i) + (N^r)^(free_level), written at the larger of the two levels.
AffineMonoid combined_monoid(const SeriesRingDesc& desc);

// The mod-p ring k[[M]]/(f mod p, relations).  Throws NonMonomialReduction
// when f mod p is not a single monomial.
SeriesRingDesc mod_p_desc(const SeriesRingDesc& desc);

enum class NormalizeOrder { Degree, Shuffled };

class SeriesRing;
using RingPtr = std::shared_ptr<const SeriesRing>;

class SeriesRing {
 public:
  static RingPtr make(SeriesRingDesc desc);

  const SeriesRingDesc& desc() const { return desc_; }
  const Int& p() const { return desc_.p; }
  const Rational& cutoff() const { return desc_.cutoff; }
  bool is_equal_char() const { return desc_.characteristic == Characteristic::Equal; }
  bool has_relation() const { return desc_.relation_f.has_value(); }
  const MonoidOracle& monoid() const { return *oracle_; }

  Rational degree(const MonoidElem& e) const { return ptlab::degree(e, desc_.p); }
  bool contains(const MonoidElem& e) const;
  // b - a lies in M.
  bool divides(const MonoidElem& a, const MonoidElem& b) const;
  // e lies in the ideal generated by the monomial relations.
  bool in_relation_ideal(const MonoidElem& e) const;
  // e^e is dropped by truncation: degree beyond the cutoff, relation ideal,
  // or inside p^N when p is a monomial.
  bool truncated(const MonoidElem& e) const;

  // Exponents of degree <= cutoff, sorted.
  const std::vector<MonoidElem>& elements() const { return elements_; }
  // Exponents of degree <= cutoff outside the relation ideal.
  std::vector<MonoidElem> monomial_basis() const;

  // Exponent phi with p = unit * e^phi, when canonical(p) is a single term.
  const std::optional<MonoidElem>& p_monomial() const { return p_monomial_; }
  // Minimal n with m + n*g structurally zero, for n up to a bound that is
  // exact on saturated monoids.
  std::optional<std::size_t> torsion_exponent(const MonoidElem& m, const MonoidElem& g) const;

  std::map<MonoidElem, Int> normalize(std::map<MonoidElem, Int> raw, NormalizeOrder order = NormalizeOrder::Degree,
                                      std::uint64_t seed = 0) const;

  RingPtr mod_p_ring() const;

 private:
  explicit SeriesRing(SeriesRingDesc desc);
  std::map<MonoidElem, Int> normalize_relation(std::map<MonoidElem, Int> raw, NormalizeOrder order,
                                               std::uint64_t seed) const;

  SeriesRingDesc desc_;
  AffineMonoid combined_;
  std::unique_ptr<MonoidOracle> oracle_;
  std::vector<MonoidElem> elements_;
  std::vector<Term> f_terms_;
  std::optional<MonoidElem> p_monomial_;
  std::optional<MonoidElem> padic_cut_;
  mutable std::once_flag mod_p_once_;
  mutable RingPtr mod_p_;
};

bool same_ring(const SeriesRing& a, const SeriesRing& b);

class Series {
 public:
  explicit Series(RingPtr ring) : ring_(std::move(ring)) {}
  Series(RingPtr ring, std::map<MonoidElem, Int> raw, NormalizeOrder order = NormalizeOrder::Degree,
         std::uint64_t seed = 0);

  static Series constant(RingPtr ring, const Int& c);
  static Series monomial(RingPtr ring, const MonoidElem& e, const Int& c = 1);
  static Series from_terms(RingPtr ring, const std::vector<Term>& terms);

  const RingPtr& ring() const { return ring_; }
  const std::map<MonoidElem, Int>& terms() const { return terms_; }
  std::vector<Term> term_list() const;
  bool is_zero() const { return terms_.empty(); }
  Int constant_coeff() const;
  // The exponent when the series is a single term.
  std::optional<MonoidElem> as_monomial() const;

  bool operator==(const Series& o) const;

 private:
  RingPtr ring_;
  std::map<MonoidElem, Int> terms_;
};

Series s_add(const Series& x, const Series& y);
Series s_sub(const Series& x, const Series& y);
Series s_neg(const Series& x);
Series s_mul(const Series& x, const Series& y);
Series s_pow(const Series& x, std::size_t n);
// Same terms read in another ring whose monoid contains the exponents
// (inclusion maps and coefficient reduction mod p).
Series map_into(const Series& x, const RingPtr& target);

Series reduce_mod_I0(const Series& x);
Series frobenius_mod_I0(const Series& x);
bool is_unit(const Series& x);

struct TorsionReport {
  std::vector<MonoidElem> annihilator;  // m with m * g = 0
  std::vector<MonoidElem> torsion;      // m with m * g^n = 0 for some n
  bool is_zero = true;
  std::size_t bounded_exponent = 0;     // l with g^l * tor = 0
  Rational cutoff;
};

TorsionReport torsion_annihilator(const RingPtr& ring, const Series& g);

}  // namespace ptlab

// Coefficient rings: F_p, Z/p^N with base-p digits, and length-2 Witt
// vectors W_2(F_p).
#pragma once

#include "ptlab/intlat.hpp"

#include <cstddef>
#include <vector>

namespace ptlab {

bool is_prime(const Int& n);
// Nonnegative residue of a mod m.
Int mod_floor(const Int& a, const Int& m);

struct PrimeFieldElem {
  Int p;
  Int value;

  PrimeFieldElem(Int prime, const Int& v);
  bool operator==(const PrimeFieldElem&) const = default;

  PrimeFieldElem operator+(const PrimeFieldElem& o) const;
  PrimeFieldElem operator-(const PrimeFieldElem& o) const;
  PrimeFieldElem operator*(const PrimeFieldElem& o) const;
  PrimeFieldElem pow(std::size_t e) const;
  PrimeFieldElem inverse() const;
};

struct TruncatedWittCoeff {
  Int p;
  std::size_t precision;
  Int value;

  TruncatedWittCoeff(Int prime, std::size_t N, const Int& v);
  bool operator==(const TruncatedWittCoeff&) const = default;

  Int modulus() const;
  TruncatedWittCoeff operator+(const TruncatedWittCoeff& o) const;
  TruncatedWittCoeff operator*(const TruncatedWittCoeff& o) const;
  bool is_unit() const { return value % p != 0; }
  std::vector<Int> digits() const;
};

struct Witt2Elem {
  PrimeFieldElem a;
  PrimeFieldElem b;

  bool operator==(const Witt2Elem&) const = default;
};

Witt2Elem w2_make(const Int& p, const Int& a, const Int& b);
Witt2Elem w2_add(const Witt2Elem& x, const Witt2Elem& y);
Witt2Elem w2_mul(const Witt2Elem& x, const Witt2Elem& y);
Witt2Elem w2_neg(const Witt2Elem& x);
PrimeFieldElem w2_ghost0(const Witt2Elem& x);
// (a, b) -> a^p + p b mod p^2, using the integer representatives in [0, p).
Int w2_to_zmod(const Witt2Elem& x);

// Base-p digits d_0..d_{N-1} of c mod p^N.
std::vector<Int> carry_normalize(const Int& c, const Int& p, std::size_t N);

}  // namespace ptlab

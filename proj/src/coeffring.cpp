#include "ptlab/coeffring.hpp"

#include "ptlab/error.hpp"
#include "ptlab/monoid.hpp"

namespace ptlab {

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

PrimeFieldElem::PrimeFieldElem(Int prime, const Int& v) : p(std::move(prime)), value(mod_floor(v, p)) {}

PrimeFieldElem PrimeFieldElem::operator+(const PrimeFieldElem& o) const {
  if (p != o.p) throw Error(ErrorCode::PrimeMismatch, "F_p addition");
  return {p, value + o.value};
}

PrimeFieldElem PrimeFieldElem::operator-(const PrimeFieldElem& o) const {
  if (p != o.p) throw Error(ErrorCode::PrimeMismatch, "F_p subtraction");
  return {p, value - o.value};
}

PrimeFieldElem PrimeFieldElem::operator*(const PrimeFieldElem& o) const {
  if (p != o.p) throw Error(ErrorCode::PrimeMismatch, "F_p multiplication");
  return {p, value * o.value};
}

PrimeFieldElem PrimeFieldElem::pow(std::size_t e) const { return {p, powm(value, Int(e), p)}; }

PrimeFieldElem PrimeFieldElem::inverse() const {
  if (value == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero in F_p");
  return {p, powm(value, p - 2, p)};
}

TruncatedWittCoeff::TruncatedWittCoeff(Int prime, std::size_t N, const Int& v)
    : p(std::move(prime)), precision(N), value(0) {
  value = mod_floor(v, modulus());
}

Int TruncatedWittCoeff::modulus() const { return ipow(p, precision); }

TruncatedWittCoeff TruncatedWittCoeff::operator+(const TruncatedWittCoeff& o) const {
  if (p != o.p || precision != o.precision) throw Error(ErrorCode::PrimeMismatch, "Z/p^N addition");
  return {p, precision, value + o.value};
}

TruncatedWittCoeff TruncatedWittCoeff::operator*(const TruncatedWittCoeff& o) const {
  if (p != o.p || precision != o.precision) throw Error(ErrorCode::PrimeMismatch, "Z/p^N multiplication");
  return {p, precision, value * o.value};
}

std::vector<Int> TruncatedWittCoeff::digits() const { return carry_normalize(value, p, precision); }

Witt2Elem w2_make(const Int& p, const Int& a, const Int& b) { return {PrimeFieldElem(p, a), PrimeFieldElem(p, b)}; }

Witt2Elem w2_add(const Witt2Elem& x, const Witt2Elem& y) {
  if (x.a.p != y.a.p) throw Error(ErrorCode::PrimeMismatch, "w2_add");
  const Int& p = x.a.p;
  const unsigned e = static_cast<unsigned>(p);
  const Int& a = x.a.value;
  const Int& c = y.a.value;
  Int carry = (pow(a, e) + pow(c, e) - pow(Int(a + c), e)) / p;
  return {PrimeFieldElem(p, a + c), PrimeFieldElem(p, x.b.value + y.b.value + carry)};
}

Witt2Elem w2_mul(const Witt2Elem& x, const Witt2Elem& y) {
  if (x.a.p != y.a.p) throw Error(ErrorCode::PrimeMismatch, "w2_mul");
  const Int& p = x.a.p;
  const unsigned e = static_cast<unsigned>(p);
  return {PrimeFieldElem(p, x.a.value * y.a.value),
          PrimeFieldElem(p, pow(x.a.value, e) * y.b.value + pow(y.a.value, e) * x.b.value)};
}

Witt2Elem w2_neg(const Witt2Elem& x) {
  const Int& p = x.a.p;
  for (Int a = 0; a < p; ++a)
    for (Int b = 0; b < p; ++b) {
      Witt2Elem y = w2_make(p, a, b);
      Witt2Elem s = w2_add(x, y);
      if (s.a.value == 0 && s.b.value == 0) return y;
    }
  throw Error(ErrorCode::InvariantViolation, "w2_neg: no additive inverse");
}

PrimeFieldElem w2_ghost0(const Witt2Elem& x) { return x.a; }

Int w2_to_zmod(const Witt2Elem& x) {
  const Int& p = x.a.p;
  return mod_floor(pow(x.a.value, static_cast<unsigned>(p)) + p * x.b.value, p * p);
}

std::vector<Int> carry_normalize(const Int& c, const Int& p, std::size_t N) {
  Int v = mod_floor(c, ipow(p, N));
  std::vector<Int> digits(N);
  for (std::size_t j = 0; j < N; ++j) {
    digits[j] = v % p;
    v /= p;
  }
  return digits;
}

}  // namespace ptlab

#include "ptlab/series.hpp"

#include "ptlab/coeffring.hpp"
#include "ptlab/error.hpp"

#include <algorithm>
#include <random>

namespace ptlab {

namespace {

Int ceil_div_rational(const Rational& q) {
  Int n = numerator(q), d = denominator(q);
  Int f = n / d;
  if (n % d != 0 && n > 0) ++f;
  return f;
}

}  // namespace

void SeriesRingDesc::validate() const {
  monoid_part.validate();
  if (!is_prime(p)) throw Error(ErrorCode::InvariantViolation, "p must be prime");
  if (monoid_part.scale_base != p) throw Error(ErrorCode::InvariantViolation, "monoid scale_base must equal p");
  if (precision < 1) throw Error(ErrorCode::InvariantViolation, "precision must be >= 1");
  if (cutoff <= 0) throw Error(ErrorCode::InvariantViolation, "cutoff must be positive");
  const std::size_t n = exponent_rank();
  if (characteristic == Characteristic::Equal && relation_f)
    throw Error(ErrorCode::InvariantViolation, "equal-characteristic ring with a relation p - f");
  if (relation_f)
    for (const auto& t : *relation_f) {
      if (t.exponent.coords.size() != n) throw Error(ErrorCode::InvariantViolation, "relation_f exponent length");
      if (degree(t.exponent, p) <= 0) throw Error(ErrorCode::InvariantViolation, "relation_f has a constant term");
    }
  for (const auto& m : monomial_relations)
    if (m.coords.size() != n) throw Error(ErrorCode::InvariantViolation, "monomial relation length");
}

AffineMonoid combined_monoid(const SeriesRingDesc& desc) {
  const AffineMonoid& Q = desc.monoid_part;
  const std::size_t d = Q.ambient_rank, r = desc.free_rank;
  const std::size_t L = std::max(Q.level, desc.free_level);
  AffineMonoid M{d + r, L, desc.p, {}};
  for (const auto& g : Q.at_level(L).generators) {
    IntVec v(d + r);
    std::copy(g.begin(), g.end(), v.begin());
    M.generators.push_back(v);
  }
  Int f = ipow(desc.p, L - desc.free_level);
  for (std::size_t j = 0; j < r; ++j) {
    IntVec v(d + r);
    v[d + j] = f;
    M.generators.push_back(v);
  }
  return M;
}

SeriesRingDesc mod_p_desc(const SeriesRingDesc& desc) {
  SeriesRingDesc out = desc;
  out.characteristic = Characteristic::Equal;
  out.precision = 1;
  out.relation_f.reset();
  if (desc.characteristic == Characteristic::Equal || !desc.relation_f) return out;
  std::map<MonoidElem, Int> fbar;
  for (const auto& t : *desc.relation_f) fbar[canonical(t.exponent, desc.p)] += t.coeff;
  std::vector<MonoidElem> support;
  for (const auto& [e, c] : fbar)
    if (mod_floor(c, desc.p) != 0) support.push_back(e);
  if (support.size() != 1) throw Error(ErrorCode::NonMonomialReduction, "f mod p is not a monomial");
  if (std::find(out.monomial_relations.begin(), out.monomial_relations.end(), support.front()) ==
      out.monomial_relations.end())
    out.monomial_relations.push_back(support.front());
  return out;
}

RingPtr SeriesRing::make(SeriesRingDesc desc) {
  desc.validate();
  for (auto& m : desc.monomial_relations) m = canonical(m, desc.p);
  if (desc.relation_f)
    for (auto& t : *desc.relation_f) t.exponent = canonical(t.exponent, desc.p);
  return RingPtr(new SeriesRing(std::move(desc)));
}

SeriesRing::SeriesRing(SeriesRingDesc desc) : desc_(std::move(desc)), combined_(combined_monoid(desc_)) {
  oracle_ = std::make_unique<MonoidOracle>(combined_);
  elements_ = oracle_->enumerate(desc_.cutoff);
  if (desc_.relation_f) {
    for (const auto& t : *desc_.relation_f) {
      if (!contains(t.exponent)) throw Error(ErrorCode::InvariantViolation, "relation_f exponent outside the monoid");
      f_terms_.push_back({t.exponent, t.coeff});
    }
    // p = f: read off the canonical form of f before p-adic truncation is known.
    std::map<MonoidElem, Int> raw;
    for (const auto& t : f_terms_) raw[t.exponent] += t.coeff;
    auto canon = normalize(raw);
    if (canon.size() == 1) {
      p_monomial_ = canon.begin()->first;
      padic_cut_ = elem_scale(*p_monomial_, Int(desc_.precision), desc_.p);
    }
  }
}

bool SeriesRing::contains(const MonoidElem& e) const {
  if (e.coords.size() != combined_.ambient_rank) throw Error(ErrorCode::InvalidArgument, "exponent rank mismatch");
  if (degree(e) <= desc_.cutoff) return std::binary_search(elements_.begin(), elements_.end(), e);
  return oracle_->contains(e);
}

bool SeriesRing::divides(const MonoidElem& a, const MonoidElem& b) const {
  return contains(elem_sub(b, a, desc_.p));
}

bool SeriesRing::in_relation_ideal(const MonoidElem& e) const {
  for (const auto& k : desc_.monomial_relations)
    if (divides(k, e)) return true;
  return false;
}

bool SeriesRing::truncated(const MonoidElem& e) const {
  if (degree(e) > desc_.cutoff) return true;
  if (in_relation_ideal(e)) return true;
  return padic_cut_ && divides(*padic_cut_, e);
}

std::vector<MonoidElem> SeriesRing::monomial_basis() const {
  std::vector<MonoidElem> out;
  for (const auto& e : elements_)
    if (!in_relation_ideal(e)) out.push_back(e);
  return out;
}

std::optional<std::size_t> SeriesRing::torsion_exponent(const MonoidElem& m, const MonoidElem& g) const {
  if (desc_.monomial_relations.empty() || g.is_zero()) return std::nullopt;
  const ConeData& cd = oracle_->cone();
  const std::size_t L = combined_.level;
  auto facet_values = [&](const MonoidElem& e) {
    std::optional<IntVec> y;
    if (e.level <= L) y = cd.lattice_coords(coords_at(e, L, desc_.p));
    if (!y) throw Error(ErrorCode::InvalidArgument, "torsion_exponent: exponent outside the monoid");
    std::vector<Int> vals;
    for (const auto& n : cd.facets) vals.push_back(dot(n, *y));
    return vals;
  };
  auto fg = facet_values(g);
  Int n_max = 1;
  for (const auto& k : desc_.monomial_relations) {
    auto fk = facet_values(k);
    for (std::size_t i = 0; i < fg.size(); ++i)
      if (fg[i] > 0) n_max = std::max(n_max, ceil_div_rational(Rational(fk[i], fg[i])));
  }
  n_max += oracle_->saturated() ? 1 : 3;
  MonoidElem acc = m;
  for (std::size_t n = 1; n <= static_cast<std::size_t>(n_max); ++n) {
    acc = elem_add(acc, g, desc_.p);
    if (in_relation_ideal(acc)) return n;
  }
  return std::nullopt;
}

std::map<MonoidElem, Int> SeriesRing::normalize(std::map<MonoidElem, Int> raw, NormalizeOrder order,
                                                std::uint64_t seed) const {
  if (desc_.characteristic == Characteristic::Mixed && desc_.relation_f)
    return normalize_relation(std::move(raw), order, seed);
  const Int modulus = desc_.characteristic == Characteristic::Equal ? desc_.p : ipow(desc_.p, desc_.precision);
  std::map<MonoidElem, Int> out;
  for (auto& [e, c] : raw) {
    MonoidElem ce = canonical(e, desc_.p);
    if (!contains(ce)) throw Error(ErrorCode::InvalidArgument, "exponent outside the ring's monoid");
    if (truncated(ce)) continue;
    out[ce] += c;
  }
  for (auto it = out.begin(); it != out.end();) {
    it->second = mod_floor(it->second, modulus);
    if (it->second == 0) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::map<MonoidElem, Int> SeriesRing::normalize_relation(std::map<MonoidElem, Int> raw, NormalizeOrder order,
                                                         std::uint64_t seed) const {
  const Int& p = desc_.p;
  using Key = std::pair<Rational, MonoidElem>;
  std::map<Key, Int> work;
  for (auto& [e, c] : raw) {
    MonoidElem ce = canonical(e, p);
    if (!contains(ce)) throw Error(ErrorCode::InvalidArgument, "exponent outside the ring's monoid");
    if (c == 0) continue;
    work[{degree(ce), ce}] += c;
  }
  // One carry step: keep the digit and push q * f * e^gamma upward.
  auto step = [&](std::map<Key, Int>::iterator it) {
    const MonoidElem& e = it->first.second;
    if (truncated(e)) return work.erase(it);
    Int d = mod_floor(it->second, p);
    Int q = (it->second - d) / p;
    if (q != 0)
      for (const auto& t : f_terms_) {
        MonoidElem e2 = elem_add(e, t.exponent, p);
        Rational deg2 = degree(e2);
        if (deg2 > desc_.cutoff) continue;
        work[{deg2, e2}] += q * t.coeff;
      }
    if (d == 0) return work.erase(it);
    it->second = d;
    return std::next(it);
  };
  if (order == NormalizeOrder::Degree) {
    // Carries only raise the degree, so one ascending pass suffices.
    for (auto it = work.begin(); it != work.end();) it = step(it);
  } else {
    std::mt19937_64 rng(seed);
    for (;;) {
      std::vector<std::map<Key, Int>::iterator> pending;
      for (auto it = work.begin(); it != work.end(); ++it)
        if (it->second < 0 || it->second >= p || truncated(it->first.second)) pending.push_back(it);
      if (pending.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, pending.size() - 1);
      step(pending[pick(rng)]);
    }
    for (auto it = work.begin(); it != work.end();) it = it->second == 0 ? work.erase(it) : std::next(it);
  }
  std::map<MonoidElem, Int> out;
  for (auto& [k, c] : work) out.emplace(k.second, c);
  return out;
}

RingPtr SeriesRing::mod_p_ring() const {
  std::call_once(mod_p_once_, [this] { mod_p_ = SeriesRing::make(mod_p_desc(desc_)); });
  return mod_p_;
}

bool same_ring(const SeriesRing& a, const SeriesRing& b) { return &a == &b || a.desc() == b.desc(); }

Series::Series(RingPtr ring, std::map<MonoidElem, Int> raw, NormalizeOrder order, std::uint64_t seed)
    : ring_(std::move(ring)), terms_(ring_->normalize(std::move(raw), order, seed)) {}

Series Series::constant(RingPtr ring, const Int& c) {
  MonoidElem zero{IntVec(ring->desc().exponent_rank()), 0};
  return Series(std::move(ring), {{zero, c}});
}

Series Series::monomial(RingPtr ring, const MonoidElem& e, const Int& c) {
  return Series(std::move(ring), {{e, c}});
}

Series Series::from_terms(RingPtr ring, const std::vector<Term>& terms) {
  std::map<MonoidElem, Int> raw;
  for (const auto& t : terms) raw[canonical(t.exponent, ring->p())] += t.coeff;
  return Series(std::move(ring), std::move(raw));
}

std::vector<Term> Series::term_list() const {
  std::vector<Term> out;
  for (const auto& [e, c] : terms_) out.push_back({e, c});
  return out;
}

Int Series::constant_coeff() const {
  MonoidElem zero{IntVec(ring_->desc().exponent_rank()), 0};
  auto it = terms_.find(zero);
  return it == terms_.end() ? Int(0) : it->second;
}

std::optional<MonoidElem> Series::as_monomial() const {
  if (terms_.size() != 1) return std::nullopt;
  return terms_.begin()->first;
}

bool Series::operator==(const Series& o) const { return same_ring(*ring_, *o.ring_) && terms_ == o.terms_; }

namespace {

void require_same(const Series& x, const Series& y) {
  if (!same_ring(*x.ring(), *y.ring())) throw Error(ErrorCode::RingMismatch, "operands live in different rings");
}

}  // namespace

Series s_add(const Series& x, const Series& y) {
  require_same(x, y);
  std::map<MonoidElem, Int> raw = x.terms();
  for (const auto& [e, c] : y.terms()) raw[e] += c;
  return Series(x.ring(), std::move(raw));
}

Series s_neg(const Series& x) {
  std::map<MonoidElem, Int> raw;
  for (const auto& [e, c] : x.terms()) raw[e] = -c;
  return Series(x.ring(), std::move(raw));
}

Series s_sub(const Series& x, const Series& y) { return s_add(x, s_neg(y)); }

Series s_mul(const Series& x, const Series& y) {
  require_same(x, y);
  const SeriesRing& R = *x.ring();
  std::vector<std::pair<Rational, const std::pair<const MonoidElem, Int>*>> ys;
  for (const auto& t : y.terms()) ys.push_back({R.degree(t.first), &t});
  std::map<MonoidElem, Int> raw;
  for (const auto& [e, c] : x.terms()) {
    Rational de = R.degree(e);
    for (const auto& [dy, t] : ys) {
      if (de + dy > R.cutoff()) continue;
      raw[elem_add(e, t->first, R.p())] += c * t->second;
    }
  }
  return Series(x.ring(), std::move(raw));
}

Series s_pow(const Series& x, std::size_t n) {
  Series acc = Series::constant(x.ring(), 1);
  for (std::size_t i = 0; i < n; ++i) acc = s_mul(acc, x);
  return acc;
}

Series map_into(const Series& x, const RingPtr& target) {
  const SeriesRing& src = *x.ring();
  if (src.p() != target->p()) throw Error(ErrorCode::PrimeMismatch, "map_into");
  if (src.is_equal_char() && !target->is_equal_char())
    throw Error(ErrorCode::RingMismatch, "cannot lift an equal-characteristic series");
  if (!src.is_equal_char() && !target->is_equal_char() && src.desc().relation_f != target->desc().relation_f)
    throw Error(ErrorCode::RingMismatch, "relations differ");
  std::map<MonoidElem, Int> raw;
  for (const auto& [e, c] : x.terms()) {
    if (!target->contains(e)) throw Error(ErrorCode::InvalidArgument, "exponent outside the target monoid");
    raw[e] = c;
  }
  return Series(target, std::move(raw));
}

Series reduce_mod_I0(const Series& x) { return map_into(x, x.ring()->mod_p_ring()); }

Series frobenius_mod_I0(const Series& x) {
  const SeriesRing& R = *x.ring();
  if (!R.is_equal_char()) throw Error(ErrorCode::InvalidArgument, "Frobenius needs an F_p-algebra");
  std::map<MonoidElem, Int> raw;
  const unsigned p = static_cast<unsigned>(R.p());
  for (const auto& [e, c] : x.terms()) {
    MonoidElem pe = elem_scale(e, R.p(), R.p());
    if (R.degree(pe) > R.cutoff()) continue;
    raw[pe] += pow(c, p);
  }
  return Series(x.ring(), std::move(raw));
}

bool is_unit(const Series& x) { return mod_floor(x.constant_coeff(), x.ring()->p()) != 0; }

TorsionReport torsion_annihilator(const RingPtr& ring, const Series& g) {
  if (!same_ring(*ring, *g.ring())) throw Error(ErrorCode::RingMismatch, "torsion_annihilator");
  TorsionReport rep;
  rep.cutoff = ring->cutoff();
  std::vector<MonoidElem> basis = ring->monomial_basis();
  if (g.is_zero()) {
    rep.annihilator = basis;
    rep.torsion = basis;
    rep.is_zero = basis.empty();
    rep.bounded_exponent = basis.empty() ? 0 : 1;
    return rep;
  }
  auto ge = g.as_monomial();
  if (!ge || mod_floor(g.terms().begin()->second, ring->p()) == 0)
    throw Error(ErrorCode::InvalidArgument, "torsion_annihilator needs a monomial with unit coefficient");
  for (const auto& m : basis) {
    auto n = ring->torsion_exponent(m, *ge);
    if (!n) continue;
    rep.torsion.push_back(m);
    if (*n == 1) rep.annihilator.push_back(m);
    rep.bounded_exponent = std::max(rep.bounded_exponent, *n);
  }
  rep.is_zero = rep.torsion.empty();
  return rep;
}

}  // namespace ptlab

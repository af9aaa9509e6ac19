#include "ptlab/logreg.hpp"

#include "ptlab/coeffring.hpp"
#include "ptlab/error.hpp"

#include <algorithm>
#include <set>

namespace ptlab {

void LogRegPresentation::validate() const {
  auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidPresentation, why); };
  if (!is_prime(p)) throw bad("p must be prime");
  if (Q.scale_base != p) throw bad("monoid scale_base must equal p");
  try {
    Q.validate();
  } catch (const Error& e) {
    throw bad(e.what());
  }
  if (Q.level != 0) throw bad("Q must be given at level 0");
  if (!is_sharp(Q)) throw bad("Q is not sharp");
  if (!is_saturated(Q)) throw bad("Q is not saturated");
  if (f.empty()) throw bad("f is empty");
  SeriesRingDesc d{Q, r, 0, p, 1, 1, Characteristic::Equal, std::nullopt, {}};
  AffineMonoid M = combined_monoid(d);
  MonoidOracle oracle(M);
  for (const auto& t : f) {
    if (t.exponent.coords.size() != Q.ambient_rank + r) throw bad("f exponent has the wrong length");
    if (degree(t.exponent, p) <= 0) throw bad("f has a constant term");
    if (!oracle.contains(t.exponent)) throw bad("f exponent outside Q + N^r");
  }
  if (!labels.empty() && labels.size() != Q.generators.size() + r) throw bad("label count");
}

LogRegPresentation unramified_rlr(const Int& p, std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "unramified_rlr needs d >= 1");
  LogRegPresentation P;
  P.name = "unramified_rlr";
  P.Q = AffineMonoid::zero(0, p);
  P.r = d;
  P.p = p;
  IntVec x1(d);
  x1[0] = 1;
  P.f = {{{x1, 0}, 1}};
  for (std::size_t i = 1; i <= d; ++i) P.labels.push_back("x" + std::to_string(i));
  P.validate();
  return P;
}

LogRegPresentation quadric(const Int& p) {
  LogRegPresentation P;
  P.name = "quadric";
  P.Q = AffineMonoid{4, 0, p, {{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}}};
  P.r = 0;
  P.p = p;
  P.f = {{{{0, 1, 1, 0}, 0}, 1}};
  P.labels = {"x", "y", "z", "w"};
  P.validate();
  return P;
}

LogRegPresentation preset(const std::string& name, const Int& p, std::size_t d) {
  if (name == "unramified_rlr") return unramified_rlr(p, d);
  if (name == "quadric") return quadric(p);
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
}

SeriesRingDesc level_desc(const LogRegPresentation& P, std::size_t i, const Rational& D, std::size_t N) {
  SeriesRingDesc d;
  d.monoid_part = p_divide(P.Q, i);
  d.free_rank = P.r;
  d.free_level = i;
  d.p = P.p;
  d.precision = N;
  d.cutoff = D;
  d.characteristic = Characteristic::Mixed;
  d.relation_f = P.f;
  return d;
}

TowerDesc build_tower(const LogRegPresentation& P, std::size_t depth, const Rational& D, std::size_t N) {
  P.validate();
  TowerDesc T;
  for (std::size_t i = 0; i <= depth; ++i) T.levels.push_back(level_desc(P, i, D, N));
  T.base_ideal = {{MonoidElem{IntVec(P.Q.ambient_rank + P.r), 0}, P.p}};
  return T;
}

TowerDesc predict_tilt(const LogRegPresentation& P, std::size_t depth, const Rational& D) {
  P.validate();
  TowerDesc T;
  for (std::size_t i = 0; i <= depth; ++i) {
    SeriesRingDesc d = level_desc(P, i, D, 1);
    d.characteristic = Characteristic::Equal;
    d.relation_f.reset();
    T.levels.push_back(std::move(d));
  }
  SeriesRingDesc with_f = level_desc(P, 0, D, 1);
  SeriesRingDesc reduced = mod_p_desc(with_f);
  T.base_ideal = {{reduced.monomial_relations.back(), 1}};
  return T;
}

bool TiltVerification::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

namespace {

std::string jn(const std::string& name, std::size_t j) { return name + "-" + std::to_string(j); }

// Monomials of the tilt at home j, as exponents gamma of R_j with gamma = p^m * top.
CheckEntry tilt_basis_check(const Tower& T, const Tower& pred, std::size_t j) {
  const Int& p = T.p();
  const std::size_t m = T.depth() - j;
  const Int scale = ipow(p, m);
  const Rational& D = T.cutoff().D;
  const RingPtr& topR = T.quotient(T.depth());
  std::set<MonoidElem> computed;
  for (const auto& d : T.basis(T.depth())) {
    MonoidElem g = elem_scale(d, scale, p);
    if (degree(g, p) > D) continue;
    TiltElem x = TiltElem::from_top(T, j, Series::monomial(topR, d));
    const Series& c0 = x.project(0);
    auto e0 = c0.as_monomial();
    if (!c0.is_zero() && (!e0 || *e0 != g)) return {jn("tilt-basis", j), false, d, "Phi_0 of a monomial tilt is wrong"};
    computed.insert(g);
  }
  // Predicted side: k[[M_j]] up to the cutoff, minus what the top level cannot see.
  std::set<MonoidElem> predicted;
  const MonoidElem& phi0 = *pred.base_generator();
  const MonoidElem bound = elem_scale(phi0, scale, p);
  for (const auto& g : pred.ring(j)->elements())
    if (!pred.ring(j)->divides(bound, g)) predicted.insert(g);
  if (computed != predicted) {
    std::vector<MonoidElem> diff;
    std::set_symmetric_difference(computed.begin(), computed.end(), predicted.begin(), predicted.end(),
                                  std::back_inserter(diff));
    return {jn("tilt-basis", j), false, diff.front(), "computed and predicted tilt monomials differ"};
  }
  return {jn("tilt-basis", j), true, std::nullopt, std::to_string(computed.size()) + " monomials match"};
}

CheckEntry multiplicative_check(const Tower& T, std::size_t j) {
  const Int& p = T.p();
  const Int scale = ipow(p, T.depth() - j);
  const RingPtr& topR = T.quotient(T.depth());
  std::vector<MonoidElem> tops;
  for (const auto& d : T.basis(T.depth()))
    if (degree(elem_scale(d, scale, p), p) <= T.cutoff().D) tops.push_back(d);
  const std::size_t cap = std::min<std::size_t>(tops.size(), 16);
  for (std::size_t a = 0; a < cap; ++a)
    for (std::size_t b = a; b < cap; ++b) {
      TiltElem x = TiltElem::from_top(T, j, Series::monomial(topR, tops[a]));
      TiltElem y = TiltElem::from_top(T, j, Series::monomial(topR, tops[b]));
      TiltElem xy = TiltElem::from_top(T, j, Series::monomial(topR, elem_add(tops[a], tops[b], p)));
      if (!te_mul(x, y).agrees_with(xy)) return {jn("multiplicative", j), false, tops[a], "monomial product mismatch"};
    }
  return {jn("multiplicative", j), true, std::nullopt, std::to_string(cap * (cap + 1) / 2) + " products"};
}

CheckEntry transition_check(const Tower& T, std::size_t j) {
  const Int& p = T.p();
  const Int scale = ipow(p, T.depth() - j);
  const RingPtr& topR = T.quotient(T.depth());
  std::size_t n = 0;
  for (const auto& d : T.basis(T.depth())) {
    if (degree(elem_scale(d, scale, p), p) > T.cutoff().D) continue;
    TiltElem x = TiltElem::from_top(T, j, Series::monomial(topR, d));
    TiltElem u = TiltElem::from_top(T, j + 1, Series::monomial(topR, elem_scale(d, p, p)));
    if (!tilt_transition(x).agrees_with(u)) return {jn("transition", j), false, d, "t^flat differs from u_j"};
    ++n;
  }
  return {jn("transition", j), true, std::nullopt, "t^flat = u_j on " + std::to_string(n) + " monomials"};
}

CheckEntry module_finite_check(const LogRegPresentation& P, const Tower& pred, std::size_t j) {
  const Int& p = P.p;
  const Int expected = layer_quotient(P.Q, j).torsion_order() * ipow(p, P.r);
  const MonoidOracle& lower = pred.ring(j)->monoid();
  std::vector<MonoidElem> reps;
  for (const auto& g : pred.ring(j + 1)->elements()) {
    bool found = false;
    for (const auto& r : reps)
      if (lower.in_group(elem_sub(g, r, p))) {
        found = true;
        break;
      }
    if (!found) reps.push_back(g);
  }
  const bool ok = Int(reps.size()) == expected;
  return {jn("module-finite", j), ok, std::nullopt,
          std::to_string(reps.size()) + " monomial generators, expected " + expected.str()};
}

}  // namespace

TiltVerification verify_tilt(const LogRegPresentation& P, std::size_t depth, const Rational& D, std::size_t N) {
  TiltVerification out;
  Tower T(build_tower(P, depth, D, N));
  Tower pred(predict_tilt(P, depth, D));
  out.cutoff = T.cutoff();
  AxiomReport axioms = verify_tower(T);
  out.checks.push_back({"axioms", axioms.all_pass(), std::nullopt,
                        axioms.all_pass() ? "source tower is perfectoid" : "source tower fails an axiom"});
  if (!axioms.all_pass()) return out;
  for (std::size_t j = 0; j <= depth; ++j) {
    out.checks.push_back(tilt_basis_check(T, pred, j));
    out.checks.push_back(multiplicative_check(T, j));
    BasisCorrespondence bc = tilt_mod_pillar_iso(T, j);
    BasisCorrespondence pc = tilt_mod_pillar_iso(pred, j);
    std::set<MonoidElem> lhs, rhs;
    for (const auto& pr : bc.pairs) lhs.insert(pr.second);
    for (const auto& pr : pc.pairs) rhs.insert(pr.second);
    out.checks.push_back({jn("mod-pillar", j), bc.bijective && pc.bijective && lhs == rhs, bc.witness,
                          "computed " + bc.detail + "; predicted " + pc.detail});
    if (j < depth) {
      out.checks.push_back(transition_check(T, j));
      out.checks.push_back(module_finite_check(P, pred, j));
    }
  }
  KatoDimReport k = kato_dim_check(P);
  const std::size_t tilt_dim = dimension(P.Q) + P.r;
  out.checks.push_back({"dimension", k.dim_R == tilt_dim, std::nullopt,
                        "source " + std::to_string(k.dim_R) + ", tilt " + std::to_string(tilt_dim)});
  return out;
}

KatoDimReport kato_dim_check(const LogRegPresentation& P) {
  P.validate();
  KatoDimReport k;
  k.dim_Q = dimension(P.Q);
  // C(k)[[Q + N^r]] has dimension dim Q + r + 1; p - f is a nonzerodivisor.
  k.dim_R = k.dim_Q + P.r + 1 - 1;
  // R / I_alpha = C(k)[[N^r]]/(p - f'), again cut by one.
  k.dim_R_mod_I = P.r + 1 - 1;
  k.consistent = k.dim_R == k.dim_R_mod_I + k.dim_Q;
  return k;
}

RingPtr RegularBase::ring() const {
  SeriesRingDesc d;
  d.monoid_part = AffineMonoid::zero(0, p);
  d.free_rank = this->d;
  d.p = p;
  d.precision = characteristic == Characteristic::Mixed ? 2 : 1;
  d.cutoff = 2;
  d.characteristic = characteristic;
  return SeriesRing::make(d);
}

OmegaModule omega_dim(const RegularBase& A) {
  if (!A.perfect_residue_field) throw Error(ErrorCode::UnsupportedBase, "residue field must be perfect");
  if (!is_prime(A.p)) throw Error(ErrorCode::UnsupportedBase, "p must be prime");
  OmegaModule om;
  om.d = A.d;
  om.p = A.p;
  if (A.characteristic == Characteristic::Mixed) {
    om.case_tag = "p not in m^2";
    om.basis_labels.push_back("dp");
  } else {
    om.case_tag = "equal characteristic";
  }
  for (std::size_t i = 1; i <= A.d; ++i) om.basis_labels.push_back("dx" + std::to_string(i));
  om.dimension = om.basis_labels.size();
  return om;
}

std::vector<Int> d_class(const RegularBase& A, const Series& x) {
  if (!A.perfect_residue_field) throw Error(ErrorCode::UnsupportedBase, "residue field must be perfect");
  const SeriesRing& R = *x.ring();
  if (R.desc().free_rank != A.d || R.desc().monoid_part.ambient_rank != 0 || R.has_relation() ||
      R.is_equal_char() != (A.characteristic == Characteristic::Equal) || R.p() != A.p)
    throw Error(ErrorCode::RingMismatch, "element is not written over the base");
  const Int& p = A.p;
  const Int c0 = x.constant_coeff();
  if (mod_floor(c0, p) != 0) throw Error(ErrorCode::InvalidArgument, "element is a unit");
  std::vector<Int> out;
  if (A.characteristic == Characteristic::Mixed) {
    if (R.desc().precision < 2) throw Error(ErrorCode::InvalidArgument, "precision 2 is needed for the p-digit");
    out.push_back(mod_floor(c0 / p, p));
  }
  for (std::size_t i = 0; i < A.d; ++i) {
    IntVec e(A.d);
    e[i] = 1;
    auto it = x.terms().find(MonoidElem{e, 0});
    out.push_back(it == x.terms().end() ? Int(0) : mod_floor(it->second, p));
  }
  return out;
}

std::size_t rank_mod_p(std::vector<std::vector<Int>> rows, const Int& p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (auto& r : rows)
    for (auto& v : r) v = mod_floor(v, p);
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Int inv = powm(rows[rank][c], p - 2, p);
    for (auto& v : rows[rank]) v = mod_floor(v * inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const Int k = rows[i][c];
      for (std::size_t t = 0; t < cols; ++t) rows[i][t] = mod_floor(rows[i][t] - k * rows[rank][t], p);
    }
    ++rank;
  }
  return rank;
}

bool is_maximal_sequence(const RegularBase& A, const std::vector<Series>& elems) {
  OmegaModule om = omega_dim(A);
  if (elems.size() != om.dimension) return false;
  std::vector<std::vector<Int>> rows;
  for (const auto& x : elems) rows.push_back(d_class(A, x));
  return rank_mod_p(rows, A.p) == om.dimension;
}

bool kummer_regularity(const RegularBase& A, const std::vector<Series>& f, const std::vector<std::size_t>& e) {
  omega_dim(A);
  if (f.size() != e.size()) throw Error(ErrorCode::InvalidArgument, "f and e differ in length");
  for (std::size_t k : e)
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "exponents must exceed 1");
  std::vector<std::vector<Int>> rows;
  for (const auto& x : f) rows.push_back(d_class(A, x));
  return rank_mod_p(rows, A.p) == f.size();
}

}  // namespace ptlab

#include "ptlab/tower.hpp"

#include "ptlab/coeffring.hpp"
#include "ptlab/error.hpp"
#include "ptlab/parallel.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace ptlab {

namespace {

std::vector<MonoidElem> minimal_generators(const SeriesRing& R, std::vector<MonoidElem> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<MonoidElem> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gens.size() && !redundant; ++j)
      if (i != j && R.divides(gens[j], gens[i]) && !(R.divides(gens[i], gens[j]) && j > i)) redundant = true;
    if (!redundant) out.push_back(gens[i]);
  }
  return out;
}

}  // namespace

Tower::Tower(TowerDesc desc) : desc_(std::move(desc)) {
  if (desc_.levels.empty()) throw Error(ErrorCode::InvariantViolation, "tower needs at least one level");
  for (const auto& L : desc_.levels) rings_.push_back(SeriesRing::make(L));
  const SeriesRingDesc& d0 = rings_.front()->desc();
  for (std::size_t i = 1; i < rings_.size(); ++i) {
    const SeriesRingDesc& di = rings_[i]->desc();
    if (di.p != d0.p) throw Error(ErrorCode::InvariantViolation, "levels use different primes");
    if (di.characteristic != d0.characteristic)
      throw Error(ErrorCode::InvariantViolation, "levels mix characteristics");
    if (di.relation_f != d0.relation_f) throw Error(ErrorCode::InvariantViolation, "levels use different relations");
    if (di.cutoff != d0.cutoff || di.precision != d0.precision)
      throw Error(ErrorCode::InvariantViolation, "levels use different truncations");
    if (di.exponent_rank() != d0.exponent_rank())
      throw Error(ErrorCode::InvariantViolation, "levels have different exponent ranks");
  }
  const Int& p = d0.p;
  for (std::size_t i = 0; i + 1 < rings_.size(); ++i) {
    AffineMonoid M = combined_monoid(rings_[i]->desc());
    for (const auto& g : M.generators)
      if (!rings_[i + 1]->contains(canonical({g, M.level}, p)))
        throw Error(ErrorCode::InvariantViolation,
                    "t_" + std::to_string(i) + " does not map level " + std::to_string(i) + " into level " +
                        std::to_string(i + 1));
  }

  const SeriesRing& R0 = *rings_.front();
  std::vector<MonoidElem> j0;
  if (!desc_.base_ideal.empty()) {
    Series g = Series::from_terms(rings_.front(), desc_.base_ideal);
    if (!g.is_zero()) {
      for (const auto& [e, c] : g.terms()) {
        bool divides_all = true;
        for (const auto& [e2, c2] : g.terms())
          if (!R0.divides(e, e2)) divides_all = false;
        if (divides_all) {
          base_gen_ = e;
          break;
        }
      }
      if (!base_gen_) throw Error(ErrorCode::NonMonomialReduction, "I0 is not generated by a monomial times a unit");
      j0.push_back(*base_gen_);
    }
  }
  if (!R0.is_equal_char() && R0.has_relation()) {
    if (!R0.p_monomial()) throw Error(ErrorCode::NonMonomialReduction, "p is not a monomial times a unit in R_0");
    j0.push_back(*R0.p_monomial());
  }
  j0_ = minimal_generators(R0, j0);

  for (const auto& R : rings_) {
    SeriesRingDesc q = mod_p_desc(R->desc());
    for (const auto& g : j0_)
      if (std::find(q.monomial_relations.begin(), q.monomial_relations.end(), g) == q.monomial_relations.end())
        q.monomial_relations.push_back(g);
    quotients_.push_back(SeriesRing::make(std::move(q)));
    bases_.push_back(quotients_.back()->monomial_basis());
  }
}

Cutoff Tower::cutoff() const {
  const SeriesRingDesc& d0 = rings_.front()->desc();
  return {d0.cutoff, d0.precision, depth()};
}

std::optional<MonoidElem> Tower::principal_generator() const {
  if (j0_.size() == 1) return j0_.front();
  return std::nullopt;
}

MonoMap Tower::transition(std::size_t i, const MonoidElem& e) const {
  const SeriesRing& Q = *quotients_.at(i + 1);
  if (!Q.contains(e)) return {MapKind::Undefined, e};
  if (Q.degree(e) > Q.cutoff()) return {MapKind::BeyondCutoff, e};
  if (Q.in_relation_ideal(e)) return {MapKind::Zero, e};
  return {MapKind::Monomial, e};
}

MonoMap Tower::frobenius(std::size_t i, const MonoidElem& e) const {
  const SeriesRing& Q = *quotients_.at(i);
  MonoidElem pe = elem_scale(e, p(), p());
  if (Q.degree(pe) > Q.cutoff()) return {MapKind::BeyondCutoff, pe};
  if (Q.in_relation_ideal(pe)) return {MapKind::Zero, pe};
  return {MapKind::Monomial, pe};
}

MonoMap Tower::projection(std::size_t i, const MonoidElem& e) const {
  const SeriesRing& lower = *quotients_.at(i);
  const SeriesRing& upper = *quotients_.at(i + 1);
  MonoidElem pe = elem_scale(e, p(), p());
  if (lower.degree(pe) > lower.cutoff()) return {MapKind::BeyondCutoff, pe};
  if (lower.contains(pe)) {
    if (lower.in_relation_ideal(pe)) return {MapKind::Zero, pe};
    return {MapKind::Monomial, pe};
  }
  // e^{pg} has no preimage below; this is only consistent when it vanishes.
  if (upper.in_relation_ideal(pe)) return {MapKind::Zero, pe};
  return {MapKind::Undefined, pe};
}

Series Tower::transition_series(std::size_t i, const Series& x) const {
  if (!same_ring(*x.ring(), *quotients_.at(i))) throw Error(ErrorCode::RingMismatch, "transition_series");
  std::map<MonoidElem, Int> raw;
  for (const auto& [e, c] : x.terms()) {
    MonoMap m = transition(i, e);
    if (m.kind == MapKind::Undefined)
      throw Error(ErrorCode::InvariantViolation, "t_" + std::to_string(i) + " undefined on " + elem_to_string(e, p()));
    if (m.kind == MapKind::Monomial) raw[m.exponent] += c;
  }
  return Series(quotients_.at(i + 1), std::move(raw));
}

Series Tower::projection_series(std::size_t i, const Series& x) const {
  if (!same_ring(*x.ring(), *quotients_.at(i + 1))) throw Error(ErrorCode::RingMismatch, "projection_series");
  std::map<MonoidElem, Int> raw;
  const unsigned pe = static_cast<unsigned>(p());
  for (const auto& [e, c] : x.terms()) {
    MonoMap m = projection(i, e);
    if (m.kind == MapKind::Undefined)
      throw Error(ErrorCode::AxiomViolation, "F_" + std::to_string(i) + " undefined on " + elem_to_string(e, p()));
    if (m.kind == MapKind::Monomial) raw[m.exponent] += pow(c, pe);
  }
  return Series(quotients_.at(i), std::move(raw));
}

std::string_view axiom_status_name(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::Pass: return "pass";
    case AxiomStatus::Fail: return "fail";
    case AxiomStatus::Skipped: return "skipped";
  }
  return "unknown";
}

bool AxiomReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const AxiomEntry& e) { return e.pass(); });
}

std::vector<std::string> AxiomReport::failed_axioms() const {
  std::set<std::string> out;
  for (const auto& e : entries)
    if (!e.pass()) out.insert(e.axiom);
  return {out.begin(), out.end()};
}

bool AxiomReport::axiom_passes(const std::string& axiom) const {
  for (const auto& e : entries)
    if (e.axiom == axiom && !e.pass()) return false;
  return true;
}

namespace {

AxiomEntry pass_entry(std::string axiom, std::string check, std::size_t level, std::string detail) {
  return {std::move(axiom), std::move(check), level, AxiomStatus::Pass, std::nullopt, std::move(detail)};
}

AxiomEntry fail_entry(std::string axiom, std::string check, std::size_t level, std::optional<MonoidElem> witness,
                      std::string detail) {
  return {std::move(axiom), std::move(check), level, AxiomStatus::Fail, std::move(witness), std::move(detail)};
}

AxiomEntry skip_entry(std::string axiom, std::string check, std::size_t level, std::string detail) {
  return {std::move(axiom), std::move(check), level, AxiomStatus::Skipped, std::nullopt, std::move(detail)};
}

std::string lv(std::size_t i) { return std::to_string(i); }

// t_i o F_i = Frob on one basis monomial of level i+1.
bool first_identity(const Tower& T, std::size_t i, const MonoidElem& g) {
  MonoMap F = T.projection(i, g);
  MonoMap fr = T.frobenius(i + 1, g);
  switch (F.kind) {
    case MapKind::Undefined: return false;
    case MapKind::BeyondCutoff: return fr.kind == MapKind::BeyondCutoff;
    case MapKind::Zero: return fr.kind == MapKind::Zero;
    case MapKind::Monomial: {
      MonoMap t = T.transition(i, F.exponent);
      if (t.kind != fr.kind) return false;
      return t.kind != MapKind::Monomial || t.exponent == fr.exponent;
    }
  }
  return false;
}

// F_i o t_i = Frob on one basis monomial of level i.
bool second_identity(const Tower& T, std::size_t i, const MonoidElem& b) {
  MonoMap t = T.transition(i, b);
  MonoMap fr = T.frobenius(i, b);
  switch (t.kind) {
    case MapKind::Undefined: return false;
    case MapKind::BeyondCutoff: return true;
    case MapKind::Zero: return fr.kind == MapKind::Zero || fr.kind == MapKind::BeyondCutoff;
    case MapKind::Monomial: {
      MonoMap F = T.projection(i, t.exponent);
      if (F.kind != fr.kind) return false;
      return F.kind != MapKind::Monomial || F.exponent == fr.exponent;
    }
  }
  return false;
}

AxiomEntry check_a(const Tower& T) {
  const SeriesRing& R0 = *T.ring(0);
  if (R0.is_equal_char()) return pass_entry("a", "a", 0, "p = 0 in R_0");
  Series pser = Series::constant(T.ring(0), T.p());
  if (pser.is_zero()) return pass_entry("a", "a", 0, "p vanishes at this truncation");
  const auto& g = T.base_generator();
  if (!g) return fail_entry("a", "a", 0, pser.terms().begin()->first, "I0 = (0) does not contain p");
  for (const auto& [e, c] : pser.terms())
    if (!R0.divides(*g, e)) return fail_entry("a", "a", 0, e, "p has a term outside I0");
  return pass_entry("a", "a", 0, "p lies in I0");
}

AxiomEntry check_b(const Tower& T, std::size_t i) {
  std::set<MonoidElem> images;
  for (const auto& b : T.basis(i)) {
    MonoMap t = T.transition(i, b);
    if (t.kind == MapKind::Undefined) return fail_entry("b", "b", i, b, "monomial missing from the next level");
    if (t.kind == MapKind::Zero) return fail_entry("b", "b", i, b, "t_" + lv(i) + " mod I0 kills a basis monomial");
    if (!images.insert(t.exponent).second) return fail_entry("b", "b", i, b, "t_" + lv(i) + " mod I0 not injective");
  }
  return pass_entry("b", "b", i, std::to_string(T.basis(i).size()) + " basis monomials map injectively");
}

AxiomEntry check_c(const Tower& T, std::size_t i) {
  for (const auto& g : T.basis(i + 1)) {
    MonoMap F = T.projection(i, g);
    if (F.kind == MapKind::Undefined)
      return fail_entry("c", "c", i, g, "Frobenius image has no preimage under t_" + lv(i));
    if (!first_identity(T, i, g)) return fail_entry("c", "c", i, g, "t_" + lv(i) + " o F_" + lv(i) + " != Frobenius");
  }
  return pass_entry("c", "c", i, "Frobenius factors through t_" + lv(i) + " on " +
                                     std::to_string(T.basis(i + 1).size()) + " basis monomials");
}

AxiomEntry check_d(const Tower& T, std::size_t i) {
  std::set<MonoidElem> images;
  for (const auto& g : T.basis(i + 1)) {
    MonoMap F = T.projection(i, g);
    if (F.kind == MapKind::Monomial) images.insert(F.exponent);
  }
  for (const auto& b : T.basis(i))
    if (!images.count(b)) return fail_entry("d", "d", i, b, "basis monomial outside the image of F_" + lv(i));
  return pass_entry("d", "d", i, "F_" + lv(i) + " surjective on " + std::to_string(T.basis(i).size()) + " monomials");
}

AxiomEntry check_e(const Tower& T, std::size_t i) {
  const SeriesRingDesc& d = T.ring(i)->desc();
  if (!is_sharp(combined_monoid(d))) return fail_entry("e", "e", i, std::nullopt, "exponent monoid is not sharp");
  for (const auto& g : T.working_ideal())
    if (g.is_zero()) return fail_entry("e", "e", i, g, "I0 + pR is the unit ideal");
  return pass_entry("e", "e", i, "local presentation with I0 in the maximal ideal");
}

struct PillarSearch {
  std::optional<AxiomEntry> entry;
  std::optional<MonoidElem> pillar;  // I1 = (e^pillar) when found
};

PillarSearch check_f1(const Tower& T) {
  PillarSearch out;
  if (T.depth() == 0) {
    out.entry = skip_entry("f", "f-1", 0, "depth 0 has no level 1");
    return out;
  }
  if (T.working_ideal_zero()) {
    out.entry = pass_entry("f", "f-1", 0, "I0 = (0), so I1 = (0)");
    return out;
  }
  auto g = T.principal_generator();
  if (!g) {
    out.entry = fail_entry("f", "f-1", 0, T.working_ideal().front(), "I0 + pR is not principal");
    return out;
  }
  std::vector<MonoidElem> found;
  for (const auto& e : T.ring(1)->elements())
    if (elem_scale(e, T.p(), T.p()) == *g) found.push_back(e);
  if (found.size() != 1) {
    out.entry = fail_entry("f", "f-1", 0, *g, "no monomial psi in level 1 with psi^p generating I0");
    return out;
  }
  out.pillar = found.front();
  out.entry = pass_entry("f", "f-1", 0, "I1 = (e^" + elem_to_string(found.front(), T.p()) + ")");
  return out;
}

AxiomEntry check_f2(const Tower& T, std::size_t i, const std::optional<MonoidElem>& pillar) {
  const SeriesRing& upper = *T.quotient(i + 1);
  std::set<MonoidElem> images;
  for (const auto& g : T.basis(i + 1)) {
    MonoMap F = T.projection(i, g);
    if (F.kind == MapKind::BeyondCutoff) continue;
    const bool in_kernel = F.kind == MapKind::Zero;
    const bool in_pillar = pillar && upper.divides(*pillar, g);
    if (in_kernel != in_pillar)
      return fail_entry("f", "f-2", i, g,
                        in_kernel ? "kernel element outside I1" : "I1 element outside the kernel of F_" + lv(i));
    if (F.kind == MapKind::Monomial && !images.insert(F.exponent).second)
      return fail_entry("f", "f-2", i, g, "F_" + lv(i) + " not injective modulo I1");
  }
  return pass_entry("f", "f-2", i, "ker F_" + lv(i) + " = I1 on basis monomials");
}

std::vector<MonoidElem> torsion_monomials(const Tower& T, std::size_t i, const MonoidElem& g) {
  std::vector<MonoidElem> out;
  const SeriesRing& R = *T.ring(i);
  for (const auto& m : R.monomial_basis())
    if (R.torsion_exponent(m, g)) out.push_back(m);
  return out;
}

AxiomEntry check_g1(const Tower& T, std::size_t i) {
  if (T.working_ideal_zero()) return pass_entry("g", "g-1", i, "I0 = (0): holds by (c) and (f)");
  auto g = T.principal_generator();
  if (!g) return skip_entry("g", "g-1", i, "I0 + pR is not principal");
  const SeriesRing& R = *T.ring(i);
  std::size_t count = 0;
  for (const auto& m : R.monomial_basis()) {
    auto n = R.torsion_exponent(m, *g);
    if (!n) continue;
    ++count;
    if (*n != 1) return fail_entry("g", "g-1", i, m, "I0-torsion element not killed by I0");
  }
  return pass_entry("g", "g-1", i, std::to_string(count) + " torsion monomials, all killed by I0");
}

AxiomEntry check_g2(const Tower& T, std::size_t i) {
  if (T.working_ideal_zero()) return pass_entry("g", "g-2", i, "I0 = (0): holds by (c) and (f)");
  auto g = T.principal_generator();
  if (!g) return skip_entry("g", "g-2", i, "I0 + pR is not principal");
  const Int& p = T.p();
  auto lower = torsion_monomials(T, i, *g);
  auto upper = torsion_monomials(T, i + 1, *g);
  std::set<MonoidElem> lower_set(lower.begin(), lower.end()), upper_set(upper.begin(), upper.end());
  const Rational& D = T.cutoff().D;
  for (const auto& m : upper) {
    MonoidElem pm = elem_scale(m, p, p);
    if (degree(pm, p) > D) continue;
    if (!lower_set.count(pm)) return fail_entry("g", "g-2", i, m, "p-th power of a torsion monomial is not torsion");
  }
  for (const auto& m : lower) {
    MonoidElem root = elem_divide(m, 1, p);
    if (!upper_set.count(root)) return fail_entry("g", "g-2", i, m, "torsion monomial without a torsion p-th root");
  }
  return pass_entry("g", "g-2", i, "p-th power is a bijection on torsion monomials");
}

std::vector<AxiomEntry> level_entries(const Tower& T, std::size_t i, const PillarSearch& ps) {
  std::vector<AxiomEntry> out;
  out.push_back(check_e(T, i));
  out.push_back(check_g1(T, i));
  if (i == T.depth()) return out;
  AxiomEntry b = check_b(T, i), c = check_c(T, i);
  const bool projection_ok = b.pass() && c.pass();
  const std::string why = "F_" + lv(i) + " unavailable: (b) or (c) fails at this level";
  out.push_back(b);
  out.push_back(c);
  out.push_back(projection_ok ? check_d(T, i) : skip_entry("d", "d", i, why));
  if (!projection_ok)
    out.push_back(skip_entry("f", "f-2", i, why));
  else if (ps.entry && !ps.entry->pass())
    out.push_back(skip_entry("f", "f-2", i, "no pillar I1"));
  else
    out.push_back(check_f2(T, i, ps.pillar));
  out.push_back(projection_ok ? check_g2(T, i) : skip_entry("g", "g-2", i, why));
  return out;
}

AxiomReport all_entries(const Tower& T) {
  AxiomReport rep;
  rep.cutoff = T.cutoff();
  rep.entries.push_back(check_a(T));
  PillarSearch ps = check_f1(T);
  rep.entries.push_back(*ps.entry);
  auto per_level = parallel_map(T.depth() + 1, [&](std::size_t i) { return level_entries(T, i, ps); });
  for (auto& v : per_level)
    for (auto& e : v) rep.entries.push_back(std::move(e));
  if (T.depth() == 0)
    for (const char* ax : {"b", "c", "d"}) rep.entries.push_back(skip_entry(ax, ax, 0, "depth 0 has no transitions"));
  std::stable_sort(rep.entries.begin(), rep.entries.end(), [](const AxiomEntry& x, const AxiomEntry& y) {
    return std::tie(x.axiom, x.check, x.level) < std::tie(y.axiom, y.check, y.level);
  });
  return rep;
}

AxiomReport filter(AxiomReport rep, const std::set<std::string>& axioms) {
  std::erase_if(rep.entries, [&](const AxiomEntry& e) { return !axioms.count(e.axiom); });
  return rep;
}

}  // namespace

AxiomReport verify_purely_inseparable(const Tower& T) { return filter(all_entries(T), {"a", "b", "c"}); }

AxiomReport verify_perfectoid(const Tower& T) { return filter(all_entries(T), {"d", "e", "f", "g"}); }

AxiomReport verify_tower(const Tower& T) { return all_entries(T); }

FrobProjection::FrobProjection(const Tower& T, std::size_t level) : T_(&T), level_(level) {
  if (level >= T.depth()) throw Error(ErrorCode::InvalidArgument, "Frobenius projection level out of range");
}

FrobProjection frobenius_projection(const Tower& T, std::size_t i) {
  FrobProjection F(T, i);
  for (const auto& g : T.basis(i + 1))
    if (!first_identity(T, i, g))
      throw Error(ErrorCode::AxiomViolation,
                  "F_" + lv(i) + " does not factor Frobenius at " + elem_to_string(g, T.p()));
  return F;
}

std::vector<DiagramCheck> diagram_checks(const Tower& T) {
  std::vector<DiagramCheck> out;
  for (std::size_t i = 0; i < T.depth(); ++i) {
    DiagramCheck tf{i, "tF", 0, std::nullopt};
    for (const auto& g : T.basis(i + 1)) {
      ++tf.checked;
      if (!first_identity(T, i, g)) {
        tf.failure = g;
        break;
      }
    }
    DiagramCheck ft{i, "Ft", 0, std::nullopt};
    for (const auto& b : T.basis(i)) {
      ++ft.checked;
      if (!second_identity(T, i, b)) {
        ft.failure = b;
        break;
      }
    }
    out.push_back(tf);
    out.push_back(ft);
  }
  return out;
}

PillarSystem pillar_system(const Tower& T) {
  PillarSystem ps;
  const std::size_t m = T.depth();
  const Int& p = T.p();
  if (T.working_ideal_zero()) {
    ps.zero_ideal = true;
    for (std::size_t i = 0; i <= m; ++i) {
      ps.generators.emplace_back(T.ring(i));
      ps.candidates.push_back(0);
    }
    ps.compatible.assign(m, true);
    ps.ideal_chain.assign(m, true);
    return ps;
  }
  auto g = T.principal_generator();
  if (!g) throw Error(ErrorCode::PillarNotFound, "I0 + pR is not principal");
  for (std::size_t i = 0; i <= m; ++i) {
    const Int scale = ipow(p, i);
    std::size_t count = 0;
    std::optional<MonoidElem> psi;
    for (const auto& e : T.ring(i)->elements())
      if (elem_scale(e, scale, p) == *g) {
        ++count;
        psi = e;
      }
    if (!psi) throw Error(ErrorCode::PillarNotFound, "no monomial pillar at level " + lv(i));
    ps.exponents.push_back(*psi);
    ps.generators.push_back(Series::monomial(T.ring(i), *psi));
    ps.candidates.push_back(count);
  }
  for (std::size_t i = 0; i < m; ++i) {
    Series upper = Series::monomial(T.quotient(i + 1), ps.exponents[i + 1]);
    Series lower = Series::monomial(T.quotient(i), ps.exponents[i]);
    bool ok = true;
    try {
      ok = T.projection_series(i, upper) == lower;
    } catch (const Error&) {
      ok = false;
    }
    ps.compatible.push_back(ok);
    ps.ideal_chain.push_back(elem_scale(ps.exponents[i + 1], p, p) == ps.exponents[i]);
  }
  return ps;
}

}  // namespace ptlab

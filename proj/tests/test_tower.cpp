#include "doctest.h"

#include "ptlab/error.hpp"
#include "ptlab/json_io.hpp"
#include "ptlab/logreg.hpp"
#include "ptlab/tilt.hpp"
#include "ptlab/tower.hpp"

#include <functional>
#include <set>

using namespace ptlab;

namespace {

MonoidElem el(std::vector<int> v, std::size_t level = 0) {
  IntVec c;
  for (int x : v) c.push_back(x);
  return {c, level};
}

TowerDesc fixture(const std::string& name) {
  return std::get<TowerDesc>(load_descriptor(std::string(PTLAB_FIXTURE_DIR) + "/" + name + ".json"));
}

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

struct PresetCase {
  std::string name;
  int p;
  std::size_t d;
};

const std::vector<PresetCase> kPresets = {
    {"unramified_rlr", 2, 2}, {"unramified_rlr", 2, 3}, {"unramified_rlr", 3, 2},
    {"unramified_rlr", 3, 3}, {"quadric", 2, 0},        {"quadric", 3, 0},
};

Tower preset_tower(const PresetCase& c) { return Tower(build_tower(preset(c.name, c.p, c.d), 2, 4, 2)); }

}  // namespace

TEST_CASE("presets satisfy all seven axioms at depth 2") {
  for (const auto& c : kPresets) {
    CAPTURE(c.name);
    CAPTURE(c.p);
    Tower T = preset_tower(c);
    AxiomReport r = verify_tower(T);
    CHECK(r.all_pass());
    CHECK(r.failed_axioms().empty());
    std::set<std::string> seen;
    for (const auto& e : r.entries) seen.insert(e.axiom);
    CHECK(seen == std::set<std::string>{"a", "b", "c", "d", "e", "f", "g"});
    CHECK(r.cutoff.D == 4);
    CHECK(r.cutoff.N == 2);
    CHECK(r.cutoff.depth == 2);
  }
}

TEST_CASE("report entries are ordered by axiom, check and level") {
  AxiomReport r = verify_tower(preset_tower(kPresets[4]));
  for (std::size_t k = 1; k < r.entries.size(); ++k) {
    const auto& a = r.entries[k - 1];
    const auto& b = r.entries[k];
    CHECK(std::tie(a.axiom, a.check, a.level) < std::tie(b.axiom, b.check, b.level));
  }
}

TEST_CASE("each sabotage fixture fails exactly its axiom with a witness") {
  for (std::string ax : {"a", "b", "c", "d", "e", "f", "g"}) {
    CAPTURE(ax);
    Tower T(fixture("sabotage_" + ax));
    AxiomReport r = verify_tower(T);
    CHECK(r.failed_axioms() == std::vector<std::string>{ax});
    bool witnessed = false;
    for (const auto& e : r.entries)
      if (e.status == AxiomStatus::Fail) witnessed = witnessed || e.witness.has_value();
    CHECK(witnessed);
  }
}

TEST_CASE("sabotage witnesses") {
  auto first_fail = [](const std::string& name) {
    Tower T(fixture(name));
    for (const auto& e : verify_tower(T).entries)
      if (e.status == AxiomStatus::Fail) return std::make_pair(e, T.p());
    FAIL("no failing entry");
    return std::make_pair(AxiomEntry{}, Int(0));
  };
  auto [a, pa] = first_fail("sabotage_a");
  CHECK(elem_to_string(*a.witness, pa) == "(1,0)");
  auto [b, pb] = first_fail("sabotage_b");
  CHECK(elem_to_string(*b.witness, pb) == "(3)");
  auto [c, pc] = first_fail("sabotage_c");
  CHECK(elem_to_string(*c.witness, pc) == "(1/4)");
  auto [d, pd] = first_fail("sabotage_d");
  CHECK(elem_to_string(*d.witness, pd) == "(0,1)");
  auto [g, pg] = first_fail("sabotage_g");
  CHECK(g.check == "g-1");
  CHECK(elem_to_string(*g.witness, pg) == "(0,1)");
}

TEST_CASE("checks needing F_i are skipped where (b) fails") {
  Tower T(fixture("sabotage_b"));
  std::size_t skipped = 0;
  for (const auto& e : verify_tower(T).entries)
    if (e.status == AxiomStatus::Skipped) {
      ++skipped;
      CHECK(e.pass());
    }
  CHECK(skipped == 6);
}

TEST_CASE("purely inseparable and perfectoid halves partition the axioms") {
  Tower T = preset_tower(kPresets[0]);
  AxiomReport pi = verify_purely_inseparable(T);
  AxiomReport pf = verify_perfectoid(T);
  for (const auto& e : pi.entries) CHECK(std::string("abc").find(e.axiom) != std::string::npos);
  for (const auto& e : pf.entries) CHECK(std::string("defg").find(e.axiom) != std::string::npos);
  CHECK(pi.entries.size() + pf.entries.size() == verify_tower(T).entries.size());
}

TEST_CASE("perfect and non-domain towers pass") {
  CHECK(verify_tower(Tower(fixture("perfect_tower"))).all_pass());
  CHECK(verify_tower(Tower(fixture("nondomain_tower"))).all_pass());

  TowerDesc zero = fixture("perfect_tower");
  zero.base_ideal.clear();
  Tower T(zero);
  CHECK(T.working_ideal_zero());
  AxiomReport r = verify_tower(T);
  CHECK(r.all_pass());
  for (const auto& e : r.entries)
    if (e.axiom == "g") CHECK(e.detail.ends_with("holds by (c) and (f)"));
  CHECK(pillar_system(T).zero_ideal);
}

TEST_CASE("working ideal of the presets") {
  Tower U(build_tower(unramified_rlr(2, 2), 2, 4, 2));
  REQUIRE(U.principal_generator());
  CHECK(*U.principal_generator() == el({1, 0}));
  Tower Qd(build_tower(quadric(2), 2, 4, 2));
  REQUIRE(Qd.principal_generator());
  CHECK(*Qd.principal_generator() == el({0, 1, 1, 0}));
}

TEST_CASE("malformed towers are rejected") {
  TowerDesc T = build_tower(unramified_rlr(2, 2), 2, 4, 2);
  T.levels[1].p = 3;
  CHECK(code_of([&] { Tower t(T); }) == ErrorCode::InvariantViolation);
  TowerDesc shrink = build_tower(unramified_rlr(2, 2), 2, 4, 2);
  std::swap(shrink.levels[0], shrink.levels[2]);
  CHECK(code_of([&] { Tower t(shrink); }) == ErrorCode::InvariantViolation);
}

TEST_CASE("Frobenius projection on explicit monomials") {
  Tower Qd(build_tower(quadric(2), 2, 4, 2));
  MonoMap m = Qd.projection(0, el({1, 0, 0, 1}, 1));
  CHECK(m.kind == MapKind::Monomial);
  CHECK(m.exponent == canonical(el({1, 0, 0, 1}), 2));

  for (int p : {2, 3}) {
    Tower U(build_tower(unramified_rlr(p, 2), 2, 4, 2));
    MonoMap x2 = U.projection(0, el({0, 1}, 1));
    CHECK(x2.kind == MapKind::Monomial);
    CHECK(x2.exponent == el({0, 1}));
    // x1 = p lies in J0.
    CHECK(U.projection(0, el({1, 0}, 1)).kind == MapKind::Zero);
    FrobProjection F = frobenius_projection(U, 1);
    Series s = Series::monomial(U.quotient(2), el({0, 1}, 2));
    CHECK(F.apply(s) == Series::monomial(U.quotient(1), el({0, 1}, 1)));
  }
}

TEST_CASE("both Frobenius identities hold on every basis monomial") {
  for (const auto& c : kPresets) {
    CAPTURE(c.name);
    auto checks = diagram_checks(preset_tower(c));
    CHECK(checks.size() == 4);
    for (const auto& d : checks) {
      CHECK(d.ok());
      CHECK(d.checked > 0);
    }
  }
  Tower bad(fixture("sabotage_c"));
  CHECK(code_of([&] { frobenius_projection(bad, 0); }) == ErrorCode::AxiomViolation);
  bool any_fail = false;
  for (const auto& d : diagram_checks(bad)) any_fail = any_fail || !d.ok();
  CHECK(any_fail);
}

TEST_CASE("pillars are monomial, unique and compatible") {
  for (const auto& c : kPresets) {
    CAPTURE(c.name);
    Tower T = preset_tower(c);
    PillarSystem ps = pillar_system(T);
    CHECK_FALSE(ps.zero_ideal);
    REQUIRE(ps.exponents.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(elem_scale(ps.exponents[i], ipow(T.p(), i), T.p()) == *T.principal_generator());
      CHECK(ps.candidates[i] == 1);
    }
    for (bool b : ps.compatible) CHECK(b);
    for (bool b : ps.ideal_chain) CHECK(b);
  }
  PillarSystem q = pillar_system(Tower(build_tower(quadric(2), 2, 4, 2)));
  CHECK(q.exponents[1] == canonical(el({0, 1, 1, 0}, 1), 2));
  CHECK(code_of([] { pillar_system(Tower(fixture("sabotage_f"))); }) == ErrorCode::PillarNotFound);
}

TEST_CASE("tilt elements") {
  Tower T(build_tower(quadric(2), 2, 4, 2));
  PillarSystem ps = pillar_system(T);
  for (std::size_t j = 0; j <= 2; ++j) {
    TiltElem z = TiltElem::zero(T, j);
    TiltElem u = TiltElem::one(T, j);
    CHECK(z.is_zero());
    CHECK_FALSE(u.is_zero());
    CHECK(z.length() == 3 - j);
    TiltElem f = pillar_tilt(T, ps, j);
    CHECK(te_mul(u, f) == f);
    CHECK(te_add(z, f) == f);
    CHECK(te_mul(z, f).is_zero());
    CHECK(te_pow(f, 0) == u);
    CHECK(te_frobenius(f) == te_pow(f, 2));
  }
  for (std::size_t j = 0; j < 2; ++j) {
    TiltElem lhs = te_pow(pillar_tilt(T, ps, j + 1), 2);
    CHECK(lhs.agrees_with(tilt_transition(pillar_tilt(T, ps, j))));
  }
  // (x, x) at home 1 is incompatible: F_1(x) = x^2 != x.
  Series x1 = Series::monomial(T.quotient(1), el({1, 1, 0, 0}));
  Series x2 = Series::monomial(T.quotient(2), el({1, 1, 0, 0}));
  CHECK(code_of([&] { TiltElem::construct(T, 1, {x1, x2}); }) == ErrorCode::IncompatibleComponents);
  TiltElem ok = TiltElem::construct(T, 1, {Series::monomial(T.quotient(1), el({1, 1, 0, 0})),
                                           Series::monomial(T.quotient(2), el({1, 1, 0, 0}, 1))});
  CHECK(ok.length() == 2);
  CHECK(tilt_projection(tilt_shift(TiltElem::from_top(T, 0, x2))).agrees_with(TiltElem::from_top(T, 0, x2)));
}

TEST_CASE("tilt modulo I0 matches the layer basis") {
  for (const auto& c : kPresets) {
    CAPTURE(c.name);
    Tower T = preset_tower(c);
    for (std::size_t j = 0; j <= 2; ++j) {
      BasisCorrespondence bc = tilt_mod_pillar_iso(T, j);
      CHECK(bc.bijective);
      CHECK(bc.pairs.size() == T.basis(j).size());
      std::set<MonoidElem> images;
      for (const auto& pr : bc.pairs) images.insert(pr.second);
      CHECK(images == std::set<MonoidElem>(T.basis(j).begin(), T.basis(j).end()));
      CHECK(tilt_mod_own_pillar(T, j).bijective);
    }
  }
}

TEST_CASE("exact tilt checks and perfection of the inverse limit") {
  for (const auto& c : kPresets) {
    CAPTURE(c.name);
    Tower T = preset_tower(c);
    for (std::size_t j = 0; j <= 2; ++j) {
      TiltReport r = verify_exactstilt(T, j);
      CHECK(r.all_pass());
      std::set<std::string> names;
      for (const auto& ch : r.checks) names.insert(ch.name);
      CHECK(names.count("generator"));
      CHECK(names.count("torsion"));
    }
    auto reps = inverse_perfection_is_perfect(T);
    CHECK(reps.size() == 2);
    for (const auto& r : reps) CHECK(r.all_pass());
  }
}

TEST_CASE("non-domain tower keeps exact tilt checks") {
  Tower T(fixture("nondomain_tower"));
  for (std::size_t j = 0; j <= 2; ++j) {
    CHECK(tilt_mod_pillar_iso(T, j).bijective);
    CHECK(verify_exactstilt(T, j).all_pass());
  }
}

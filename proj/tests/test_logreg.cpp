#include "doctest.h"

#include "ptlab/error.hpp"
#include "ptlab/logreg.hpp"

#include <functional>
#include <set>

using namespace ptlab;

namespace {

MonoidElem el(std::vector<int> v, std::size_t level = 0) {
  IntVec c;
  for (int x : v) c.push_back(x);
  return {c, level};
}

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

struct RawTerm {
  std::vector<int> exponent;
  int coeff;
};

Series series(const RingPtr& R, const std::vector<RawTerm>& terms) {
  std::vector<Term> ts;
  for (const auto& t : terms) ts.push_back({el(t.exponent), t.coeff});
  return Series::from_terms(R, ts);
}

// Order of f in the maximal ideal (p, x_1..x_d) of Z_p[[x]], from the raw
// terms: min over terms of v_p(c) + |gamma|.
int m_adic_order(const std::vector<RawTerm>& terms, int p) {
  int best = 1 << 20;
  for (const auto& t : terms) {
    if (t.coeff == 0) continue;
    int v = 0, c = t.coeff;
    while (c % p == 0) c /= p, ++v;
    for (int x : t.exponent) v += x;
    best = std::min(best, v);
  }
  return best;
}

// A[T]/(T^e - f) is regular exactly when f has order one.
bool valuation_oracle(const std::vector<RawTerm>& f, int p) { return m_adic_order(f, p) == 1; }

}  // namespace

TEST_CASE("presets validate and carry their data") {
  LogRegPresentation U = unramified_rlr(3, 2);
  CHECK(U.Q.ambient_rank == 0);
  CHECK(U.r == 2);
  CHECK(U.f.size() == 1);
  CHECK(U.f[0].exponent == el({1, 0}));
  LogRegPresentation Q = quadric(2);
  CHECK(Q.labels == std::vector<std::string>{"x", "y", "z", "w"});
  CHECK(preset("quadric", 3, 0).p == 3);
  CHECK(code_of([] { preset("cubic", 2, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("invalid presentations") {
  LogRegPresentation P = quadric(2);
  P.p = 4;
  CHECK(code_of([&] { P.validate(); }) == ErrorCode::InvalidPresentation);

  LogRegPresentation N = quadric(2);
  N.Q = AffineMonoid{1, 0, 2, {{2}, {3}}};
  N.f = {{el({2}), 1}};
  N.labels.clear();
  CHECK(code_of([&] { N.validate(); }) == ErrorCode::InvalidPresentation);

  LogRegPresentation C = unramified_rlr(2, 2);
  C.f.push_back({el({0, 0}), 1});
  CHECK(code_of([&] { C.validate(); }) == ErrorCode::InvalidPresentation);

  LogRegPresentation W = unramified_rlr(2, 2);
  W.f = {{el({1, 0, 0}), 1}};
  CHECK(code_of([&] { W.validate(); }) == ErrorCode::InvalidPresentation);
}

TEST_CASE("tower levels follow the division layers") {
  LogRegPresentation P = quadric(3);
  TowerDesc T = build_tower(P, 2, 4, 2);
  REQUIRE(T.levels.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(T.levels[i].monoid_part == p_divide(P.Q, i));
    CHECK(T.levels[i].characteristic == Characteristic::Mixed);
  }
  TowerDesc pred = predict_tilt(P, 2, 4);
  CHECK(pred.levels[2].characteristic == Characteristic::Equal);
  REQUIRE(pred.base_ideal.size() == 1);
  CHECK(pred.base_ideal[0].exponent == el({0, 1, 1, 0}));
}

TEST_CASE("computed and predicted tilts agree for both presets") {
  for (int p : {2, 3}) {
    for (const auto& P : {unramified_rlr(p, 2), quadric(p)}) {
      CAPTURE(P.name);
      CAPTURE(p);
      TiltVerification v = verify_tilt(P, 2, 4, 2);
      CHECK(v.all_pass());
      std::set<std::string> names;
      for (const auto& c : v.checks) names.insert(c.name);
      for (std::string n : {"axioms", "tilt-basis-0", "tilt-basis-1", "tilt-basis-2", "multiplicative-0",
                            "mod-pillar-2", "transition-1", "module-finite-0", "module-finite-1", "dimension"})
        CHECK(names.count(n));
    }
  }
}

TEST_CASE("module-finite counts are layer orders times p^r") {
  // quadric: |layer_quotient(Q, 0)| = p^3 and r = 0.
  for (int p : {2, 3}) {
    TiltVerification v = verify_tilt(quadric(p), 2, 4, 2);
    for (const auto& c : v.checks)
      if (c.name == "module-finite-0") CHECK(c.detail.find(std::to_string(p * p * p)) != std::string::npos);
  }
}

TEST_CASE("degenerate presentation Q = 0, r = 1") {
  LogRegPresentation P = unramified_rlr(2, 1);
  CHECK(verify_tower(Tower(build_tower(P, 2, 4, 2))).all_pass());
  CHECK(verify_tilt(P, 2, 4, 2).all_pass());
  KatoDimReport k = kato_dim_check(P);
  CHECK(k.dim_R == 1);
  CHECK(k.dim_R_mod_I == 1);
  CHECK(k.dim_Q == 0);
  CHECK(k.consistent);
}

TEST_CASE("dimension formula") {
  KatoDimReport q = kato_dim_check(quadric(2));
  CHECK(q.dim_R == 3);
  CHECK(q.dim_R_mod_I == 0);
  CHECK(q.dim_Q == 3);
  CHECK(q.consistent);

  LogRegPresentation P;
  P.Q = AffineMonoid{1, 0, 2, {{1}}};
  P.r = 1;
  P.p = 2;
  P.f = {{el({1, 0}), 1}};
  KatoDimReport k = kato_dim_check(P);
  CHECK(k.dim_R == 2);
  CHECK(k.dim_R_mod_I == 1);
  CHECK(k.consistent);

  for (std::size_t d = 1; d <= 4; ++d) CHECK(kato_dim_check(unramified_rlr(2, d)).dim_R == d);
}

TEST_CASE("omega module dimensions") {
  for (std::size_t d = 0; d <= 3; ++d) {
    OmegaModule m = omega_dim({d, 2, Characteristic::Mixed, true});
    CHECK(m.dimension == d + 1);
    CHECK(m.case_tag == "p not in m^2");
    CHECK(m.basis_labels.front() == "dp");
    OmegaModule e = omega_dim({d, 3, Characteristic::Equal, true});
    CHECK(e.dimension == d);
  }
  CHECK(code_of([] { omega_dim({2, 2, Characteristic::Mixed, false}); }) == ErrorCode::UnsupportedBase);
}

TEST_CASE("d-classes") {
  RegularBase A{2, 3, Characteristic::Mixed, true};
  RingPtr R = A.ring();
  CHECK(d_class(A, series(R, {{{0, 0}, 3}})) == std::vector<Int>{1, 0, 0});
  CHECK(d_class(A, series(R, {{{0, 0}, 6}, {{0, 1}, 4}, {{1, 1}, 1}})) == std::vector<Int>{2, 0, 1});
  CHECK(code_of([&] { d_class(A, series(R, {{{0, 0}, 1}})); }) == ErrorCode::InvalidArgument);
  RegularBase B{1, 3, Characteristic::Mixed, true};
  CHECK(code_of([&] { d_class(B, series(R, {{{1, 0}, 1}})); }) == ErrorCode::RingMismatch);
}

TEST_CASE("maximal sequences") {
  for (int p : {2, 3, 5}) {
    RegularBase A{2, p, Characteristic::Mixed, true};
    RingPtr R = A.ring();
    Series pp = series(R, {{{0, 0}, p}});
    Series x1 = series(R, {{{1, 0}, 1}});
    Series x2 = series(R, {{{0, 1}, 1}});
    CHECK(is_maximal_sequence(A, {pp, x1, x2}));
    CHECK(is_maximal_sequence(A, {s_add(pp, x1), x1, x2}));
    CHECK(is_maximal_sequence(A, {s_add(pp, s_mul(x1, x2)), x1, s_add(x2, s_mul(x1, x1))}));
    CHECK_FALSE(is_maximal_sequence(A, {x1, x2, s_add(x1, x2)}));
    CHECK_FALSE(is_maximal_sequence(A, {s_mul(pp, x1), x1, x2}));
    CHECK_FALSE(is_maximal_sequence(A, {x1, x2}));

    RegularBase E{2, p, Characteristic::Equal, true};
    RingPtr S = E.ring();
    Series y1 = series(S, {{{1, 0}, 1}});
    Series y2 = series(S, {{{0, 1}, 1}});
    CHECK(is_maximal_sequence(E, {y1, y2}));
    CHECK(is_maximal_sequence(E, {y1, s_add(y2, s_mul(y1, y1))}));
    CHECK_FALSE(is_maximal_sequence(E, {y1, s_add(y1, s_mul(y1, y2))}));
  }
}

TEST_CASE("Kummer regularity matches the valuation oracle") {
  struct Case {
    std::size_t d;
    std::vector<RawTerm> f;
    std::size_t e;
    bool expected;
  };
  for (int p : {2, 3}) {
    const std::vector<Case> cases = {
        {0, {{{}, p}}, 2, true},                         // T^2 = p
        {0, {{{}, p * p}}, 2, false},                    // T^2 = p^2
        {1, {{{1}, 1}}, 2, true},                        // T^2 = x
        {1, {{{2}, 1}}, 3, false},                       // T^3 = x^2
        {1, {{{0}, p}, {{2}, 1}}, 2, true},              // T^2 = p + x^2
        {1, {{{1}, p}}, 2, false},                       // T^2 = p x
    };
    for (const auto& c : cases) {
      CAPTURE(p);
      CAPTURE(c.d);
      RegularBase A{c.d, p, Characteristic::Mixed, true};
      bool oracle = valuation_oracle(c.f, p);
      CHECK(oracle == c.expected);
      CHECK(kummer_regularity(A, {series(A.ring(), c.f)}, {c.e}) == oracle);
    }
  }
  RegularBase A{1, 2, Characteristic::Mixed, true};
  Series pp = series(A.ring(), {{{0}, 2}});
  Series x = series(A.ring(), {{{1}, 1}});
  CHECK(kummer_regularity(A, {pp, x}, {2, 2}));
  CHECK_FALSE(kummer_regularity(A, {x, s_add(x, s_mul(x, x))}, {2, 3}));
  CHECK(code_of([&] { kummer_regularity(A, {x}, {1}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("rank mod p") {
  CHECK(rank_mod_p({{2, 4}, {1, 3}}, 2) == 1);
  CHECK(rank_mod_p({{2, 4}, {1, 3}}, 3) == 2);
  CHECK(rank_mod_p({{3, 0, 0}, {0, 6, 0}}, 3) == 0);
  CHECK(rank_mod_p({}, 5) == 0);
}

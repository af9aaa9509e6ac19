#include "doctest.h"

#include "ptlab/classgroup.hpp"
#include "ptlab/error.hpp"

#include <functional>
#include <numeric>
#include <random>

using namespace ptlab;

namespace {

AffineMonoid mono(std::size_t d, std::vector<std::vector<int>> gens, int c = 2) {
  AffineMonoid Q{d, 0, c, {}};
  for (const auto& g : gens) {
    IntVec v;
    for (int x : g) v.push_back(x);
    Q.generators.push_back(v);
  }
  return Q;
}

AffineMonoid free_monoid(std::size_t d) {
  std::vector<std::vector<int>> gens;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<int> e(d, 0);
    e[i] = 1;
    gens.push_back(e);
  }
  return mono(d, gens);
}

AffineMonoid quadric() { return mono(4, {{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}}); }
AffineMonoid a1() { return mono(2, {{2, 0}, {1, 1}, {0, 2}}); }

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

FinAbelianGroup cyclic(int n) { return FinAbelianGroup{0, {n}}; }

long minor(const std::vector<std::vector<long>>& M, const std::vector<std::size_t>& rows,
           const std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return M[rows[0]][cols[0]];
  long det = 0;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<std::size_t> rest(cols);
    rest.erase(rest.begin() + static_cast<long>(k));
    long sub = minor(M, {rows.begin() + 1, rows.end()}, rest);
    det += (k % 2 ? -1 : 1) * M[rows[0]][cols[k]] * sub;
  }
  return det;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    if (static_cast<std::size_t>(__builtin_popcount(mask)) == k) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s.push_back(i);
      out.push_back(s);
    }
  return out;
}

// Cokernel of a square integer matrix of full rank from its determinantal
// divisors: d_k = gcd of the k x k minors, invariant factors d_k / d_{k-1}.
FinAbelianGroup coker_oracle(const std::vector<std::vector<long>>& M) {
  const std::size_t n = M.size();
  IntVec inv;
  long prev = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    long g = 0;
    for (const auto& r : subsets(n, k))
      for (const auto& c : subsets(n, k)) g = std::gcd(g, std::labs(minor(M, r, c)));
    if (g / prev > 1) inv.push_back(g / prev);
    prev = g;
  }
  return FinAbelianGroup{0, inv};
}

AffineMonoid transform(const AffineMonoid& Q, const std::vector<std::vector<int>>& U) {
  AffineMonoid out = Q;
  for (auto& g : out.generators) {
    IntVec h(g.size(), 0);
    for (std::size_t r = 0; r < U.size(); ++r)
      for (std::size_t k = 0; k < g.size(); ++k) h[r] += Int(U[r][k]) * g[k];
    g = h;
  }
  return out;
}

std::vector<std::vector<int>> random_unimodular(std::size_t d, std::mt19937_64& rng) {
  std::vector<std::vector<int>> U(d, std::vector<int>(d, 0));
  for (std::size_t i = 0; i < d; ++i) U[i][i] = 1;
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (std::size_t k = 0; k < d; ++k) U[i][k] += c * U[j][k];
  }
  return U;
}

}  // namespace

TEST_CASE("free monoids have trivial class group") {
  for (std::size_t d = 1; d <= 4; ++d) {
    ClassGroupReport r = class_group(free_monoid(d));
    CHECK(r.group.is_trivial());
    CHECK(r.facet_count == d);
    CHECK(r.torsion_order == 1);
    CHECK(r.ell_primary.empty());
  }
}

TEST_CASE("A1 cone gives Z/2") {
  ClassGroupReport r = class_group(a1());
  // Lattice basis (2,0), (1,1) paired with the facet normals e1*, e2*.
  CHECK(r.group == coker_oracle({{2, 0}, {1, 1}}));
  CHECK(r.group == cyclic(2));
  CHECK(r.facet_count == 2);
  CHECK(r.torsion_order == 2);
  REQUIRE(r.ell_primary.count(2));
  CHECK(r.ell_primary.at(2) == cyclic(2));
}

TEST_CASE("quadric cone gives Z with no torsion") {
  ClassGroupReport r = class_group(quadric());
  CHECK(r.group.free_rank == 1);
  CHECK(r.group.invariant_factors.empty());
  CHECK(r.facet_count == 4);
  CHECK(r.torsion_order == 1);
}

TEST_CASE("two-dimensional cones spanned by e1 and (a,b) give Z/b") {
  for (int b = 2; b <= 7; ++b)
    for (int a = 1; a < b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      CAPTURE(a);
      CAPTURE(b);
      // (1,1) lies in the cone and makes the group Z^2.
      AffineMonoid Q = saturate(mono(2, {{1, 0}, {a, b}, {1, 1}}));
      ClassGroupReport r = class_group(Q);
      CHECK(r.group == cyclic(b));
      // Facet normals (0,1) and (b,-a).
      CHECK(r.group == coker_oracle({{0, 1}, {b, -a}}));
    }
}

TEST_CASE("three-dimensional simplicial examples") {
  ClassGroupReport r = class_group(mono(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}));
  CHECK(r.group.is_trivial());
  CHECK(r.facet_count == 3);
  // With (1,1,1) the group is Z^3; facet normals (0,0,1), (0,2,-1), (2,0,-1).
  ClassGroupReport s = class_group(mono(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}, {1, 1, 1}}));
  CHECK(s.group == coker_oracle({{0, 0, 1}, {0, 2, -1}, {2, 0, -1}}));
  CHECK(s.group == FinAbelianGroup{0, {2, 2}});
  CHECK(s.torsion_order == 4);
}

TEST_CASE("class group rejects unsaturated and non-sharp monoids") {
  CHECK(code_of([] { class_group(mono(1, {{2}, {3}})); }) == ErrorCode::NotSaturated);
  CHECK(code_of([] { class_group(mono(2, {{1, 0}, {-1, 0}, {0, 1}})); }) == ErrorCode::NotSharp);
}

TEST_CASE("class group is invariant under unimodular coordinate changes") {
  std::mt19937_64 rng(20240611);
  for (const auto& Q : {a1(), quadric(), mono(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}, {1, 1, 1}})}) {
    ClassGroupReport base = class_group(Q);
    for (int trial = 0; trial < 5; ++trial) {
      ClassGroupReport moved = class_group(transform(Q, random_unimodular(Q.ambient_rank, rng)));
      CHECK(moved.group == base.group);
      CHECK(moved.facet_count == base.facet_count);
    }
  }
}

TEST_CASE("report invariants") {
  for (const auto& Q : {a1(), quadric(), saturate(mono(2, {{1, 0}, {5, 12}, {1, 1}}))}) {
    ClassGroupReport r = class_group(Q);
    Int prod = 1;
    for (const auto& n : r.group.invariant_factors) prod *= n;
    CHECK(r.torsion_order == prod);
    Int parts = 1;
    for (const auto& [l, G] : r.ell_primary) parts *= G.torsion_order();
    CHECK(parts == r.torsion_order);
    CHECK(prime_to_p_report(r.group, 2).finite);
  }
}

TEST_CASE("l-primary parts") {
  CHECK(ell_primary(cyclic(12), 2) == cyclic(4));
  CHECK(ell_primary(cyclic(12), 3) == cyclic(3));
  CHECK(ell_primary(cyclic(12), 5).is_trivial());
  CHECK(ell_primary(FinAbelianGroup{0, {2, 6}}, 2) == FinAbelianGroup{0, {2, 2}});
  CHECK(ell_primary(FinAbelianGroup{3, {}}, 2).is_trivial());
  CHECK(ell_primary(class_group(a1()).group, 2) == cyclic(2));
}

TEST_CASE("prime-to-p torsion") {
  PrimeToPReport a = prime_to_p_report(FinAbelianGroup{1, {2}}, 2);
  CHECK(a.group.is_trivial());
  CHECK(a.order == 1);
  CHECK(a.primes.empty());
  CHECK(a.finite);

  PrimeToPReport b = prime_to_p_report(cyclic(6), 2);
  CHECK(b.group == cyclic(3));
  CHECK(b.order == 3);
  CHECK(b.primes == std::vector<Int>{3});

  PrimeToPReport c = prime_to_p_report(class_group(mono(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}, {1, 1, 1}})).group, 3);
  CHECK(c.group == FinAbelianGroup{0, {2, 2}});
  CHECK(c.primes == std::vector<Int>{2});
  CHECK(c.finite);

  CHECK(prime_factors(360) == std::vector<Int>{2, 3, 5});
  CHECK(prime_factors(1).empty());
}

#include "ptlab/monoid.hpp"

#include "ptlab/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ptlab {

namespace {

Int coord_sum(const IntVec& v) {
  Int s = 0;
  for (const auto& x : v) s += x;
  return s;
}

Int floor_rational(const Rational& q) {
  Int n = numerator(q), d = denominator(q);
  Int f = n / d;
  if (n % d != 0 && n < 0) --f;
  return f;
}

Int ceil_rational(const Rational& q) { return -floor_rational(-q); }

// Coordinates of x written at level L, or nullopt when x is not on the
// lattice (1/c^L) Z^d.
std::optional<IntVec> coords_at_level(const MonoidElem& x, std::size_t L, const Int& c) {
  if (x.level <= L) return coords_at(x, L, c);
  Int f = ipow(c, x.level - L);
  IntVec out(x.coords.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (x.coords[i] % f != 0) return std::nullopt;
    out[i] = x.coords[i] / f;
  }
  return out;
}

// Membership in the monoid generated by gens (lattice coordinates) by
// descending the positive grading.
bool fine_member(const ConeData& cd, const std::vector<IntVec>& gens, const IntVec& y,
                 std::map<IntVec, bool>& memo) {
  bool zero = std::all_of(y.begin(), y.end(), [](const Int& v) { return v == 0; });
  if (zero) return true;
  if (!cd.in_cone(y) || dot(cd.grading, y) <= 0) return false;
  if (auto it = memo.find(y); it != memo.end()) return it->second;
  bool found = false;
  for (const auto& g : gens) {
    IntVec z = y;
    for (std::size_t k = 0; k < z.size(); ++k) z[k] -= g[k];
    if (fine_member(cd, gens, z, memo)) {
      found = true;
      break;
    }
  }
  memo.emplace(y, found);
  return found;
}

std::vector<IntVec> nonzero_lattice_gens(const ConeData& cd) {
  std::vector<IntVec> out;
  for (const auto& g : cd.gens)
    if (std::any_of(g.begin(), g.end(), [](const Int& v) { return v != 0; })) out.push_back(g);
  return out;
}

// Hilbert basis in lattice coordinates of a pointed cone.
std::vector<IntVec> hilbert_basis_lattice(const ConeData& cd) {
  if (!cd.pointed) throw Error(ErrorCode::NotSharp, "Hilbert basis of a cone with lineality");
  const std::size_t r = cd.rank();
  if (r == 0) return {};
  std::vector<Int> gvals;
  for (const auto& g : nonzero_lattice_gens(cd)) gvals.push_back(dot(cd.grading, g));
  std::sort(gvals.rbegin(), gvals.rend());
  Int bound = 0;
  for (std::size_t i = 0; i < std::min(r, gvals.size()); ++i) bound += gvals[i];

  IntVec lo(r), hi(r);
  for (const auto& ray : cd.rays) {
    Rational scale(bound, dot(cd.grading, ray));
    for (std::size_t k = 0; k < r; ++k) {
      Rational v = scale * Rational(ray[k]);
      lo[k] = std::min(lo[k], floor_rational(v));
      hi[k] = std::max(hi[k], ceil_rational(v));
    }
  }

  std::map<Int, std::vector<IntVec>> by_grade;
  std::set<IntVec> points;
  IntVec x = lo;
  for (;;) {
    if (cd.in_cone(x)) {
      Int g = dot(cd.grading, x);
      if (g > 0 && g <= bound) {
        by_grade[g].push_back(x);
        points.insert(x);
      }
    }
    std::size_t k = 0;
    while (k < r && x[k] == hi[k]) x[k] = lo[k], ++k;
    if (k == r) break;
    ++x[k];
  }

  std::vector<IntVec> basis;
  for (const auto& [g, pts] : by_grade)
    for (const auto& p : pts) {
      bool reducible = false;
      for (const auto& [h, smaller] : by_grade) {
        if (h >= g) break;
        for (const auto& y : smaller) {
          IntVec z = p;
          for (std::size_t k = 0; k < r; ++k) z[k] -= y[k];
          if (points.count(z)) {
            reducible = true;
            break;
          }
        }
        if (reducible) break;
      }
      if (!reducible) basis.push_back(p);
    }
  return basis;
}

bool saturated_with(const ConeData& cd) {
  std::vector<IntVec> gens = nonzero_lattice_gens(cd);
  std::map<IntVec, bool> memo;
  for (const auto& h : hilbert_basis_lattice(cd))
    if (!fine_member(cd, gens, h, memo)) return false;
  return true;
}

std::vector<Rational> solve_rational_inverse_column(const std::vector<std::vector<Rational>>& A, std::size_t j) {
  const std::size_t n = A.size();
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) M[i][k] = A[i][k];
    M[i][n] = (i == j) ? 1 : 0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (M[piv][col] == 0) ++piv;
    std::swap(M[piv], M[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || M[i][col] == 0) continue;
      Rational f = M[i][col] / M[col][col];
      for (std::size_t k = col; k <= n; ++k) M[i][k] -= f * M[col][k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = M[i][n] / M[i][i];
  return x;
}

IntVec clear_denominators(const std::vector<Rational>& v) {
  Int den = 1;
  for (const auto& q : v) den = lcm(den, denominator(q));
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator(v[i] * Rational(den));
  return primitive(out);
}

}  // namespace

bool MonoidElem::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Int& v) { return v == 0; });
}

Int ipow(const Int& base, std::size_t e) {
  Int r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

MonoidElem canonical(MonoidElem e, const Int& c) {
  if (e.is_zero()) {
    e.level = 0;
    return e;
  }
  while (e.level > 0 && std::all_of(e.coords.begin(), e.coords.end(), [&](const Int& v) { return v % c == 0; })) {
    for (auto& v : e.coords) v /= c;
    --e.level;
  }
  return e;
}

IntVec coords_at(const MonoidElem& e, std::size_t level, const Int& c) {
  if (level < e.level) throw Error(ErrorCode::InvalidArgument, "coords_at: target level below element level");
  Int f = ipow(c, level - e.level);
  IntVec out = e.coords;
  for (auto& v : out) v *= f;
  return out;
}

MonoidElem elem_add(const MonoidElem& a, const MonoidElem& b, const Int& c) {
  if (a.coords.size() != b.coords.size()) throw Error(ErrorCode::InvalidArgument, "exponent rank mismatch");
  std::size_t L = std::max(a.level, b.level);
  IntVec x = coords_at(a, L, c), y = coords_at(b, L, c);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return canonical({std::move(x), L}, c);
}

MonoidElem elem_sub(const MonoidElem& a, const MonoidElem& b, const Int& c) {
  if (a.coords.size() != b.coords.size()) throw Error(ErrorCode::InvalidArgument, "exponent rank mismatch");
  std::size_t L = std::max(a.level, b.level);
  IntVec x = coords_at(a, L, c), y = coords_at(b, L, c);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return canonical({std::move(x), L}, c);
}

MonoidElem elem_scale(const MonoidElem& a, const Int& k, const Int& c) {
  MonoidElem out = a;
  for (auto& v : out.coords) v *= k;
  return canonical(std::move(out), c);
}

MonoidElem elem_divide(const MonoidElem& a, std::size_t i, const Int& c) {
  return canonical({a.coords, a.level + i}, c);
}

Rational degree(const MonoidElem& e, const Int& c) { return Rational(coord_sum(e.coords), ipow(c, e.level)); }

std::string elem_to_string(const MonoidElem& e, const Int& c) {
  const Int den = ipow(c, e.level);
  std::string out = "(";
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    if (i) out += ",";
    out += Rational(e.coords[i], den).str();
  }
  return out + ")";
}

AffineMonoid AffineMonoid::free(std::size_t d, const Int& c) {
  AffineMonoid Q{d, 0, c, {}};
  for (std::size_t i = 0; i < d; ++i) {
    IntVec g(d);
    g[i] = 1;
    Q.generators.push_back(g);
  }
  return Q;
}

AffineMonoid AffineMonoid::zero(std::size_t d, const Int& c) { return AffineMonoid{d, 0, c, {}}; }

IntMatrix AffineMonoid::generator_matrix() const { return IntMatrix::from_columns(generators, ambient_rank); }

AffineMonoid AffineMonoid::at_level(std::size_t new_level) const {
  if (new_level < level) throw Error(ErrorCode::InvalidArgument, "at_level: cannot lower the level");
  AffineMonoid out = *this;
  Int f = ipow(scale_base, new_level - level);
  for (auto& g : out.generators)
    for (auto& v : g) v *= f;
  out.level = new_level;
  return out;
}

std::vector<IntVec> AffineMonoid::nonzero_generators() const {
  std::vector<IntVec> out;
  for (const auto& g : generators)
    if (std::any_of(g.begin(), g.end(), [](const Int& v) { return v != 0; })) out.push_back(g);
  return out;
}

void AffineMonoid::validate() const {
  if (scale_base < 2) throw Error(ErrorCode::InvariantViolation, "scale_base must be >= 2");
  for (const auto& g : generators)
    if (g.size() != ambient_rank) throw Error(ErrorCode::InvariantViolation, "generator length != ambient_rank");
}

bool ConeData::in_cone(const IntVec& y) const {
  for (const auto& n : facets)
    if (dot(n, y) < 0) return false;
  return true;
}

std::vector<IntVec> extreme_rays(const std::vector<IntVec>& rows, std::size_t dim) {
  if (dim == 0) return {};
  std::vector<std::size_t> chosen;
  {
    std::vector<IntVec> acc;
    for (std::size_t i = 0; i < rows.size() && chosen.size() < dim; ++i) {
      acc.push_back(rows[i]);
      if (rank(IntMatrix::from_rows(acc, dim)) == acc.size()) {
        chosen.push_back(i);
      } else {
        acc.pop_back();
      }
    }
  }
  if (chosen.size() < dim) throw Error(ErrorCode::InvalidArgument, "extreme_rays: constraint rows do not have full rank");

  std::vector<std::vector<Rational>> A(dim, std::vector<Rational>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) A[i][k] = Rational(rows[chosen[i]][k]);
  std::vector<IntVec> rays;
  for (std::size_t j = 0; j < dim; ++j) rays.push_back(clear_denominators(solve_rational_inverse_column(A, j)));

  std::vector<IntVec> processed;
  for (auto i : chosen) processed.push_back(rows[i]);
  std::vector<bool> used(rows.size(), false);
  for (auto i : chosen) used[i] = true;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (used[i]) continue;
    const IntVec& a = rows[i];
    std::vector<Int> val(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) val[k] = dot(a, rays[k]);
    std::set<IntVec> next;
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (val[k] >= 0) next.insert(rays[k]);
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (val[n] >= 0) continue;
        std::vector<IntVec> common;
        for (const auto& b : processed)
          if (dot(b, rays[p]) == 0 && dot(b, rays[n]) == 0) common.push_back(b);
        if (dim < 2 || common.size() < dim - 2) continue;
        if (rank(IntMatrix::from_rows(common, dim)) != dim - 2) continue;
        IntVec v(dim);
        for (std::size_t k = 0; k < dim; ++k) v[k] = val[p] * rays[n][k] - val[n] * rays[p][k];
        next.insert(primitive(v));
      }
    }
    rays.assign(next.begin(), next.end());
    processed.push_back(a);
  }
  std::sort(rays.begin(), rays.end());
  return rays;
}

ConeData cone_data(const AffineMonoid& Q) {
  Q.validate();
  ConeData cd;
  IntMatrix G = Q.generator_matrix();
  cd.basis = lattice_basis(G);
  cd.solver = LatticeSolver(cd.basis);
  for (const auto& g : Q.generators) cd.gens.push_back(*cd.solver.solve(g));
  const std::size_t r = cd.rank();
  if (r == 0) return cd;
  cd.facets = extreme_rays(nonzero_lattice_gens(cd), r);
  cd.pointed = rank(IntMatrix::from_rows(cd.facets, r)) == r;
  if (cd.pointed) {
    cd.rays = extreme_rays(cd.facets, r);
    cd.grading = IntVec(r);
    for (const auto& n : cd.facets)
      for (std::size_t k = 0; k < r; ++k) cd.grading[k] += n[k];
  }
  return cd;
}

MonoidOracle::MonoidOracle(AffineMonoid Q) : Q_(std::move(Q)), cone_(cone_data(Q_)) {
  if (cone_.pointed) saturated_ = saturated_with(cone_);
}

std::optional<IntVec> MonoidOracle::to_level(const MonoidElem& x) const {
  if (x.coords.size() != Q_.ambient_rank) throw Error(ErrorCode::InvalidArgument, "exponent rank mismatch");
  return coords_at_level(x, Q_.level, Q_.scale_base);
}

bool MonoidOracle::in_group(const MonoidElem& x) const {
  auto v = to_level(x);
  return v && cone_.lattice_coords(*v).has_value();
}

bool MonoidOracle::contains_lattice(const IntVec& y) const {
  if (saturated_) return cone_.in_cone(y);
  if (!cone_.pointed) throw Error(ErrorCode::NotSharp, "membership in a non-sharp, non-saturated monoid");
  std::map<IntVec, bool> memo;
  return fine_member(cone_, nonzero_lattice_gens(cone_), y, memo);
}

bool MonoidOracle::contains(const MonoidElem& x) const {
  auto v = to_level(x);
  if (!v) return false;
  auto y = cone_.lattice_coords(*v);
  if (!y) return false;
  return contains_lattice(*y);
}

std::vector<MonoidElem> MonoidOracle::enumerate(const Rational& max_degree) const {
  std::vector<IntVec> gens = Q_.nonzero_generators();
  for (const auto& g : gens)
    if (coord_sum(g) <= 0) throw Error(ErrorCode::InvalidArgument, "enumeration needs positive generator degrees");
  Int bound = floor_rational(max_degree * Rational(ipow(Q_.scale_base, Q_.level)));
  std::set<IntVec> seen;
  if (bound < 0) return {};
  std::vector<IntVec> frontier{IntVec(Q_.ambient_rank)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const auto& v : frontier)
      for (const auto& g : gens) {
        IntVec w = v;
        for (std::size_t k = 0; k < w.size(); ++k) w[k] += g[k];
        if (coord_sum(w) <= bound && seen.insert(w).second) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  std::vector<MonoidElem> out;
  out.reserve(seen.size());
  for (const auto& v : seen) out.push_back(canonical({v, Q_.level}, Q_.scale_base));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_sharp(const AffineMonoid& Q) { return cone_data(Q).pointed; }

std::vector<IntVec> hilbert_basis(const AffineMonoid& Q) {
  ConeData cd = cone_data(Q);
  std::vector<IntVec> out;
  for (const auto& h : hilbert_basis_lattice(cd)) out.push_back(cd.basis * h);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_saturated(const AffineMonoid& Q) {
  ConeData cd = cone_data(Q);
  if (!cd.pointed) throw Error(ErrorCode::NotSharp, "saturation test needs a sharp monoid");
  return saturated_with(cd);
}

AffineMonoid saturate(const AffineMonoid& Q) {
  AffineMonoid out = Q;
  out.generators = hilbert_basis(Q);
  return out;
}

AffineMonoid p_divide(const AffineMonoid& Q, std::size_t i) {
  AffineMonoid out = Q;
  out.level += i;
  return out;
}

FinAbelianGroup layer_quotient(const AffineMonoid& Q, std::size_t i) {
  AffineMonoid upper = p_divide(Q, i + 1);
  AffineMonoid lower = p_divide(Q, i).at_level(upper.level);
  return abelian_quotient(upper.generator_matrix(), lower.generator_matrix());
}

std::size_t dimension(const AffineMonoid& Q) { return rank(Q.generator_matrix()); }

ExactnessResult exactness(const AffineMonoid& Qp, const AffineMonoid& Q, const Rational& degree_bound) {
  if (Qp.scale_base != Q.scale_base || Qp.ambient_rank != Q.ambient_rank)
    throw Error(ErrorCode::InvalidArgument, "exactness: monoids live in different ambient lattices");
  const Int& c = Q.scale_base;
  std::size_t L = std::max(Qp.level, Q.level);
  MonoidOracle sub(Qp.at_level(L)), big(Q.at_level(L));
  for (const auto& g : sub.monoid().generators)
    if (!big.contains({g, L})) throw Error(ErrorCode::NotSubmonoid, "generator of Q' outside Q");

  ExactnessResult res;
  for (const auto& x : big.enumerate(degree_bound))
    if (sub.in_group(x) && !sub.contains(x)) {
      res.exact = false;
      res.witness = x;
      return res;
    }
  if (!(sub.saturated() && big.saturated())) return res;

  // cone(Q) cap span(Q') = cone(Q'), tested on the extreme rays of the left side.
  res.unconditional = true;
  const ConeData& cs = sub.cone();
  const ConeData& cb = big.cone();
  const std::size_t s = cs.rank();
  if (s == 0) return res;
  std::vector<IntVec> T;  // columns of the Q' basis in Q-lattice coordinates
  for (std::size_t j = 0; j < s; ++j) T.push_back(*cb.lattice_coords(cs.basis.column(j)));
  std::vector<IntVec> rows;
  for (const auto& n : cb.facets) {
    IntVec row(s);
    for (std::size_t j = 0; j < s; ++j) row[j] = dot(n, T[j]);
    rows.push_back(row);
  }
  for (const auto& z : extreme_rays(rows, s))
    if (!cs.in_cone(z)) {
      res.exact = false;
      res.witness = canonical({cs.basis * z, L}, c);
      return res;
    }
  return res;
}

bool is_exact_submonoid(const AffineMonoid& Qp, const AffineMonoid& Q, const Rational& degree_bound) {
  return exactness(Qp, Q, degree_bound).exact;
}

IntMatrix exact_embed_Nd(const AffineMonoid& Q) {
  ConeData cd = cone_data(Q);
  if (!cd.pointed) throw Error(ErrorCode::NotSharp, "exact_embed_Nd");
  if (!saturated_with(cd)) throw Error(ErrorCode::NotSaturated, "exact_embed_Nd");
  const std::size_t r = cd.rank(), d = Q.ambient_rank;
  SmithForm s = snf(cd.basis);
  IntMatrix out(cd.facets.size(), d);
  for (std::size_t f = 0; f < cd.facets.size(); ++f) {
    IntVec nV(r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) nV[j] += cd.facets[f][k] * s.V(k, j);
    Int m = 1;
    for (std::size_t k = 0; k < r; ++k) {
      const Int& dk = s.D(k, k);
      m = lcm(m, dk / gcd(abs(nV[k]), dk));
    }
    IntVec z(d);
    for (std::size_t k = 0; k < r; ++k) z[k] = m * nV[k] / s.D(k, k);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) out(f, j) += z[k] * s.U(k, j);
  }
  return out;
}

GradedDecomposition::GradedDecomposition(const AffineMonoid& Qp, const AffineMonoid& Q)
    : c_(Q.scale_base), level_(std::max(Qp.level, Q.level)) {
  if (!is_exact_submonoid(Qp, Q)) throw Error(ErrorCode::NotExact, "graded_decomposition");
  cone_ = cone_data(Q.at_level(level_));
  AffineMonoid sub = Qp.at_level(level_);
  IntMatrix S(cone_.rank(), sub.generators.size());
  for (std::size_t j = 0; j < sub.generators.size(); ++j) {
    IntVec t = *cone_.lattice_coords(sub.generators[j]);
    for (std::size_t i = 0; i < t.size(); ++i) S(i, j) = t[i];
  }
  smith_ = snf(S);
  group_ = group_from_diagonal(smith_.diagonal(), cone_.rank() - smith_.rank);
}

IntVec GradedDecomposition::class_of(const MonoidElem& x) const {
  auto v = coords_at_level(x, level_, c_);
  std::optional<IntVec> t;
  if (v) t = cone_.lattice_coords(*v);
  if (!t) throw Error(ErrorCode::InvalidArgument, "class_of: element outside Q^gp");
  IntVec y = smith_.U * *t;
  IntVec label;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (k < smith_.rank) {
      const Int& d = smith_.D(k, k);
      if (d == 1) continue;
      Int r = y[k] % d;
      if (r < 0) r += d;
      label.push_back(r);
    } else {
      label.push_back(y[k]);
    }
  }
  return label;
}

bool GradedDecomposition::in_zero_component(const MonoidElem& x) const {
  IntVec label = class_of(x);
  return std::all_of(label.begin(), label.end(), [](const Int& v) { return v == 0; });
}

GradedDecomposition graded_decomposition(const AffineMonoid& Qp, const AffineMonoid& Q) {
  return GradedDecomposition(Qp, Q);
}

}  // namespace ptlab

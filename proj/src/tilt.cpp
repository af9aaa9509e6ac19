#include "ptlab/tilt.hpp"

#include "ptlab/error.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace ptlab {

namespace {

void require_compatible(const TiltElem& x, const TiltElem& y, const char* op) {
  if (&x.tower() != &y.tower() || x.home() != y.home())
    throw Error(ErrorCode::IncompatibleComponents, std::string(op) + ": different towers or home levels");
}

}  // namespace

TiltElem TiltElem::construct(const Tower& T, std::size_t home, std::vector<Series> components) {
  if (components.empty()) throw Error(ErrorCode::InvalidArgument, "tilt element needs a component");
  if (home + components.size() - 1 > T.depth())
    throw Error(ErrorCode::InvalidArgument, "tilt element longer than the tower");
  for (std::size_t i = 0; i < components.size(); ++i)
    if (!same_ring(*components[i].ring(), *T.quotient(home + i)))
      throw Error(ErrorCode::RingMismatch, "component " + std::to_string(i) + " is not in R_" +
                                               std::to_string(home + i) + " / I0");
  for (std::size_t i = 0; i + 1 < components.size(); ++i) {
    bool ok = false;
    try {
      ok = T.projection_series(home + i, components[i + 1]) == components[i];
    } catch (const Error&) {
      ok = false;
    }
    if (!ok)
      throw Error(ErrorCode::IncompatibleComponents, "F(a_" + std::to_string(i + 1) + ") != a_" + std::to_string(i));
  }
  return TiltElem(T, home, std::move(components));
}

TiltElem TiltElem::from_top(const Tower& T, std::size_t home, const Series& top) {
  if (home > T.depth()) throw Error(ErrorCode::InvalidArgument, "home level beyond the tower");
  if (!same_ring(*top.ring(), *T.quotient(T.depth())))
    throw Error(ErrorCode::RingMismatch, "top component must lie in the top level");
  std::vector<Series> comps(T.depth() - home + 1, Series(T.quotient(home)));
  comps.back() = top;
  for (std::size_t k = comps.size() - 1; k-- > 0;) {
    try {
      comps[k] = T.projection_series(home + k, comps[k + 1]);
    } catch (const Error& e) {
      throw Error(ErrorCode::IncompatibleComponents, e.what());
    }
  }
  return TiltElem(T, home, std::move(comps));
}

TiltElem TiltElem::zero(const Tower& T, std::size_t home) {
  if (home > T.depth()) throw Error(ErrorCode::InvalidArgument, "home level beyond the tower");
  std::vector<Series> comps;
  for (std::size_t l = home; l <= T.depth(); ++l) comps.emplace_back(T.quotient(l));
  return TiltElem(T, home, std::move(comps));
}

TiltElem TiltElem::one(const Tower& T, std::size_t home) {
  if (home > T.depth()) throw Error(ErrorCode::InvalidArgument, "home level beyond the tower");
  std::vector<Series> comps;
  for (std::size_t l = home; l <= T.depth(); ++l) comps.push_back(Series::constant(T.quotient(l), 1));
  return TiltElem(T, home, std::move(comps));
}

const Series& TiltElem::project(std::size_t k) const {
  if (k >= comps_.size()) throw Error(ErrorCode::InvalidArgument, "projection beyond the truncation depth");
  return comps_[k];
}

bool TiltElem::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Series& s) { return s.is_zero(); });
}

bool TiltElem::agrees_with(const TiltElem& o) const {
  if (T_ != o.T_ || home_ != o.home_) return false;
  const std::size_t n = std::min(comps_.size(), o.comps_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!(comps_[i] == o.comps_[i])) return false;
  return true;
}

bool TiltElem::operator==(const TiltElem& o) const { return comps_.size() == o.comps_.size() && agrees_with(o); }

TiltElem te_add(const TiltElem& x, const TiltElem& y) {
  require_compatible(x, y, "te_add");
  const std::size_t n = std::min(x.length(), y.length());
  std::vector<Series> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(s_add(x.comps_[i], y.comps_[i]));
  return TiltElem(*x.T_, x.home_, std::move(comps));
}

TiltElem te_mul(const TiltElem& x, const TiltElem& y) {
  require_compatible(x, y, "te_mul");
  const std::size_t n = std::min(x.length(), y.length());
  std::vector<Series> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(s_mul(x.comps_[i], y.comps_[i]));
  return TiltElem(*x.T_, x.home_, std::move(comps));
}

TiltElem te_pow(const TiltElem& x, std::size_t n) {
  TiltElem acc = TiltElem::one(x.tower(), x.home());
  for (std::size_t i = 0; i < n; ++i) acc = te_mul(acc, x);
  return acc;
}

TiltElem te_frobenius(const TiltElem& x) {
  const std::size_t p = static_cast<std::size_t>(x.T_->p());
  std::vector<Series> comps;
  for (const auto& c : x.comps_) comps.push_back(s_pow(c, p));
  return TiltElem(*x.T_, x.home_, std::move(comps));
}

TiltElem tilt_transition(const TiltElem& x) {
  const Tower& T = *x.T_;
  std::vector<Series> comps;
  for (std::size_t i = 0; i < x.length() && x.home_ + i + 1 <= T.depth(); ++i)
    comps.push_back(T.transition_series(x.home_ + i, x.comps_[i]));
  if (comps.empty()) throw Error(ErrorCode::InvalidArgument, "no level above the home level");
  return TiltElem(T, x.home_ + 1, std::move(comps));
}

TiltElem tilt_projection(const TiltElem& x) {
  if (x.home_ == 0) throw Error(ErrorCode::InvalidArgument, "no level below home level 0");
  const Tower& T = *x.T_;
  std::vector<Series> comps;
  for (std::size_t i = 0; i < x.length(); ++i) comps.push_back(T.projection_series(x.home_ - 1 + i, x.comps_[i]));
  return TiltElem(T, x.home_ - 1, std::move(comps));
}

TiltElem tilt_shift(const TiltElem& x) {
  if (x.length() < 2) throw Error(ErrorCode::InvalidArgument, "shift needs two components");
  return TiltElem(*x.T_, x.home_ + 1, std::vector<Series>(x.comps_.begin() + 1, x.comps_.end()));
}

TiltElem pillar_tilt(const Tower& T, const PillarSystem& ps, std::size_t j) {
  std::vector<Series> comps;
  for (std::size_t l = j; l <= T.depth(); ++l) {
    if (ps.zero_ideal)
      comps.emplace_back(T.quotient(l));
    else
      comps.push_back(Series::monomial(T.quotient(l), ps.exponents.at(l)));
  }
  return TiltElem::construct(T, j, std::move(comps));
}

namespace {

// Image of the monomial tilt with top delta under Phi_0 at home j.
MonoMap phi0_image(const Tower& T, std::size_t j, const MonoidElem& delta) {
  MonoMap cur{MapKind::Monomial, delta};
  for (std::size_t l = T.depth(); l-- > j;) {
    cur = T.projection(l, cur.exponent);
    if (cur.kind != MapKind::Monomial) return cur;
  }
  return cur;
}

// Tops delta of B_m whose sequences reach level j inside the cutoff.
std::vector<MonoidElem> monomial_tops(const Tower& T, std::size_t j) {
  const Int& p = T.p();
  const Int scale = ipow(p, T.depth() - j);
  std::vector<MonoidElem> out;
  for (const auto& d : T.basis(T.depth()))
    if (degree(elem_scale(d, scale, p), p) <= T.cutoff().D) out.push_back(d);
  return out;
}

BasisCorrespondence correspondence(const Tower& T, std::size_t j, const std::optional<MonoidElem>& top_div,
                                   const std::optional<MonoidElem>& target_div, std::string ideal) {
  BasisCorrespondence bc;
  bc.level = j;
  bc.ideal = std::move(ideal);
  const SeriesRing& top = *T.quotient(T.depth());
  const SeriesRing& bottom = *T.quotient(j);
  auto fail = [&](const MonoidElem& w, std::string why) {
    if (bc.bijective) {
      bc.bijective = false;
      bc.witness = w;
      bc.detail = std::move(why);
    }
  };
  std::set<MonoidElem> images;
  for (const auto& d : monomial_tops(T, j)) {
    if (top_div && top.divides(*top_div, d)) continue;
    MonoMap im = phi0_image(T, j, d);
    if (im.kind == MapKind::Undefined) {
      fail(d, "Frobenius projection undefined along the sequence");
      continue;
    }
    if (im.kind != MapKind::Monomial) {
      fail(d, "nonzero class maps to zero");
      continue;
    }
    if (target_div && bottom.divides(*target_div, im.exponent)) {
      fail(d, "nonzero class maps into the ideal");
      continue;
    }
    if (!images.insert(im.exponent).second) fail(d, "two classes share an image");
    bc.pairs.push_back({d, im.exponent});
  }
  std::size_t targets = 0;
  for (const auto& b : T.basis(j)) {
    if (target_div && bottom.divides(*target_div, b)) continue;
    ++targets;
    if (!images.count(b)) fail(b, "basis monomial not hit");
  }
  if (bc.bijective)
    bc.detail = std::to_string(bc.pairs.size()) + " classes onto " + std::to_string(targets) + " basis monomials";
  return bc;
}

}  // namespace

BasisCorrespondence tilt_mod_pillar_iso(const Tower& T, std::size_t j) {
  if (j > T.depth()) throw Error(ErrorCode::InvalidArgument, "level beyond the tower");
  if (T.working_ideal_zero()) return correspondence(T, j, std::nullopt, std::nullopt, "I0");
  auto g = T.principal_generator();
  if (!g) {
    BasisCorrespondence bc{j, "I0", {}, false, T.working_ideal().front(), "I0 + pR is not principal"};
    return bc;
  }
  return correspondence(T, j, elem_divide(*g, T.depth() - j, T.p()), std::nullopt, "I0");
}

BasisCorrespondence tilt_mod_own_pillar(const Tower& T, std::size_t j) {
  if (j > T.depth()) throw Error(ErrorCode::InvalidArgument, "level beyond the tower");
  if (T.working_ideal_zero()) return correspondence(T, j, std::nullopt, std::nullopt, "Ij");
  auto g = T.principal_generator();
  if (!g) {
    BasisCorrespondence bc{j, "Ij", {}, false, T.working_ideal().front(), "I0 + pR is not principal"};
    return bc;
  }
  return correspondence(T, j, elem_divide(*g, T.depth(), T.p()), elem_divide(*g, j, T.p()), "Ij");
}

bool TiltReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

namespace {

CheckEntry generator_check(const Tower& T, std::size_t j) {
  CheckEntry c{"generator", true, std::nullopt, ""};
  const Int& p = T.p();
  const SeriesRing& top = *T.quotient(T.depth());
  const SeriesRing& bottom = *T.quotient(j);
  std::optional<MonoidElem> top_gen, bottom_gen;
  if (!T.working_ideal_zero()) {
    PillarSystem ps;
    try {
      ps = pillar_system(T);
      pillar_tilt(T, ps, j);
    } catch (const Error& e) {
      return {"generator", false, std::nullopt, e.what()};
    }
    top_gen = ps.exponents.at(T.depth());
    bottom_gen = ps.exponents.at(j);
  }
  std::size_t kernel = 0;
  for (const auto& d : monomial_tops(T, j)) {
    MonoMap im = phi0_image(T, j, d);
    if (im.kind == MapKind::Undefined) return {"generator", false, d, "Frobenius projection undefined"};
    const bool in_kernel = im.kind != MapKind::Monomial || (bottom_gen && bottom.divides(*bottom_gen, im.exponent));
    const bool multiple = top_gen && top.divides(*top_gen, d);
    if (in_kernel != multiple)
      return {"generator", false, d,
              in_kernel ? "kernel element not divisible by the pillar tilt" : "pillar multiple outside the kernel"};
    kernel += in_kernel;
  }
  c.detail = top_gen ? "kernel of pi_j o Phi_0 generated by the pillar tilt with top e^" + elem_to_string(*top_gen, p) +
                           " (" + std::to_string(kernel) + " kernel monomials)"
                     : "I0 = (0): kernel is zero";
  return c;
}

CheckEntry pillar_power_check(const Tower& T, std::size_t j) {
  if (j >= T.depth()) return {"pillar-power", true, std::nullopt, "no level above j"};
  if (T.working_ideal_zero()) return {"pillar-power", true, std::nullopt, "I0 = (0): both sides vanish"};
  try {
    PillarSystem ps = pillar_system(T);
    TiltElem lhs = te_pow(pillar_tilt(T, ps, j + 1), static_cast<std::size_t>(T.p()));
    TiltElem rhs = tilt_transition(pillar_tilt(T, ps, j));
    if (!lhs.agrees_with(rhs)) return {"pillar-power", false, ps.exponents.at(j + 1), "(f_{j+1})^p != f_j"};
  } catch (const Error& e) {
    return {"pillar-power", false, std::nullopt, e.what()};
  }
  return {"pillar-power", true, std::nullopt, "(f_{j+1})^p = f_j componentwise"};
}

CheckEntry torsion_check(const Tower& T, std::size_t j) {
  if (T.working_ideal_zero())
    return {"torsion", true, std::nullopt, "I0 = (0): torsion is the whole ring on both sides"};
  auto g = T.principal_generator();
  if (!g) return {"torsion", false, T.working_ideal().front(), "I0 + pR is not principal"};
  const Int& p = T.p();
  const std::size_t m = T.depth() - j;
  const SeriesRing& Rj = *T.ring(j);
  const SeriesRing& Rm = *T.ring(T.depth());
  const MonoidElem g_top = elem_divide(*g, m, p);
  std::size_t src = 0, tilt = 0;
  for (const auto& e : Rj.elements()) {
    const MonoidElem e_top = elem_divide(e, m, p);
    const bool zero_src = Rj.in_relation_ideal(e);
    const bool zero_tilt = Rm.in_relation_ideal(e_top);
    if (zero_src != zero_tilt) return {"torsion", false, e, "monomial vanishes on one side only"};
    if (zero_src) continue;
    const bool t_src = Rj.torsion_exponent(e, *g).has_value();
    const bool t_tilt = Rm.torsion_exponent(e_top, g_top).has_value();
    if (t_src != t_tilt) return {"torsion", false, e, "I0-torsion differs between R_j and its tilt"};
    src += t_src;
    tilt += t_tilt;
  }
  return {"torsion", true, std::nullopt,
          "torsion monomials: " + std::to_string(src) + " in R_j, " + std::to_string(tilt) + " in the tilt"};
}

}  // namespace

TiltReport verify_exactstilt(const Tower& T, std::size_t j) {
  if (j > T.depth()) throw Error(ErrorCode::InvalidArgument, "level beyond the tower");
  TiltReport rep;
  rep.level = j;
  rep.cutoff = T.cutoff();
  rep.checks.push_back(generator_check(T, j));
  rep.checks.push_back(pillar_power_check(T, j));
  BasisCorrespondence bc = tilt_mod_own_pillar(T, j);
  rep.checks.push_back({"quotient", bc.bijective, bc.witness, "R_j^flat / I_j^flat vs R_j / I_j: " + bc.detail});
  rep.checks.push_back(torsion_check(T, j));
  return rep;
}

std::vector<TiltReport> inverse_perfection_is_perfect(const Tower& T) {
  std::vector<TiltReport> out;
  for (std::size_t j = 0; j < T.depth(); ++j) {
    TiltReport rep;
    rep.level = j;
    rep.cutoff = T.cutoff();
    try {
      const RingPtr& topR = T.quotient(T.depth());
      std::vector<TiltElem> upper, lower;
      for (const auto& d : T.basis(T.depth())) {
        upper.push_back(TiltElem::from_top(T, j + 1, Series::monomial(topR, d)));
        lower.push_back(TiltElem::from_top(T, j, Series::monomial(topR, d)));
      }
      std::mt19937_64 rng(0x5eedULL + j);
      const std::size_t n = upper.size();
      for (std::size_t k = 0; k < 8 && n > 0; ++k) {
        TiltElem s = upper[rng() % n];
        for (int t = 0; t < 2; ++t) s = te_add(s, upper[rng() % n]);
        upper.push_back(s);
      }

      CheckEntry shift{"shift-inverse", true, std::nullopt, ""};
      for (std::size_t k = 0; k < upper.size() && shift.pass; ++k)
        if (upper[k].length() >= 2 && !tilt_shift(tilt_projection(upper[k])).agrees_with(upper[k])) {
          shift.pass = false;
          shift.witness = upper[k].components().back().terms().empty()
                              ? std::nullopt
                              : std::optional<MonoidElem>(upper[k].components().back().terms().begin()->first);
          shift.detail = "shift o F != id";
        }
      for (std::size_t k = 0; k < lower.size() && shift.pass; ++k)
        if (lower[k].length() >= 2 && !tilt_projection(tilt_shift(lower[k])).agrees_with(lower[k])) {
          shift.pass = false;
          shift.detail = "F o shift != id";
        }
      if (shift.pass) shift.detail = "checked on " + std::to_string(upper.size() + lower.size()) + " elements";
      rep.checks.push_back(shift);

      CheckEntry frob{"frobenius", true, std::nullopt, ""};
      for (const auto& x : upper)
        if (!te_frobenius(x).agrees_with(tilt_transition(tilt_projection(x)))) {
          frob.pass = false;
          frob.detail = "Frobenius != t o F";
          break;
        }
      if (frob.pass) frob.detail = "Frobenius = t o F on " + std::to_string(upper.size()) + " elements";
      rep.checks.push_back(frob);

      CheckEntry ring{"ring-map", true, std::nullopt, ""};
      const std::size_t cap = std::min<std::size_t>(upper.size(), 24);
      for (std::size_t a = 0; a < cap && ring.pass; ++a)
        for (std::size_t b = a; b < cap && ring.pass; ++b) {
          const TiltElem& x = upper[upper.size() - 1 - a];
          const TiltElem& y = upper[b];
          if (!tilt_projection(te_mul(x, y)).agrees_with(te_mul(tilt_projection(x), tilt_projection(y))) ||
              !tilt_projection(te_add(x, y)).agrees_with(te_add(tilt_projection(x), tilt_projection(y)))) {
            ring.pass = false;
            ring.detail = "F is not additive or multiplicative";
          }
        }
      if (!tilt_projection(TiltElem::zero(T, j + 1)).is_zero()) {
        ring.pass = false;
        ring.detail = "F(0) != 0";
      }
      if (!tilt_projection(TiltElem::one(T, j + 1)).agrees_with(TiltElem::one(T, j))) {
        ring.pass = false;
        ring.detail = "F(1) != 1";
      }
      if (ring.pass) ring.detail = "checked on " + std::to_string(cap * (cap + 1) / 2) + " pairs";
      rep.checks.push_back(ring);
    } catch (const Error& e) {
      rep.checks.push_back({"construction", false, std::nullopt, e.what()});
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace ptlab

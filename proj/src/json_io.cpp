#include "ptlab/json_io.hpp"

#include "ptlab/error.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace ptlab {

namespace {

Error bad(const std::string& path, const std::string& why) {
  return Error(ErrorCode::InvariantViolation, (path.empty() ? std::string("<root>") : path) + ": " + why);
}

std::string field(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw bad(field(path, key), "missing");
  return *it;
}

void reject_unknown(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw bad(path, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw bad(field(path, k), "unknown field");
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw bad(path, "expected an array");
  return j;
}

std::size_t size_from_json(const Json& j, const std::string& path) {
  Int v = int_from_json(j, path);
  if (v < 0 || v > Int(std::numeric_limits<std::uint32_t>::max())) throw bad(path, "expected a small non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string string_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) throw bad(path, "expected a string");
  return j.get<std::string>();
}

template <class F>
auto wrap_validation(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvariantViolation && std::string(e.what()).find(": ") != std::string::npos &&
        !path.empty() && std::string(e.what()).find(path) != std::string::npos)
      throw;
    throw bad(path, e.what());
  }
}

}  // namespace

Json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

Json rational_to_json(const Rational& v) {
  if (denominator(v) == 1) return int_to_json(numerator(v));
  return Json(v.str());
}

Int int_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw bad(path, "expected an integer, got \"" + s + "\"");
    return Int(s);
  }
  throw bad(path, "expected an integer");
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(int_from_json(Json(s), path));
    Int num = int_from_json(Json(s.substr(0, slash)), path);
    Int den = int_from_json(Json(s.substr(slash + 1)), path);
    if (den == 0) throw bad(path, "zero denominator");
    return Rational(num, den);
  }
  return Rational(int_from_json(j, path));
}

Json to_json(const MonoidElem& e) {
  Json coords = Json::array();
  for (const auto& c : e.coords) coords.push_back(int_to_json(c));
  return {{"coords", coords}, {"level", e.level}};
}

Json to_json(const Term& t) { return {{"exponent", to_json(t.exponent)}, {"coeff", int_to_json(t.coeff)}}; }

Json to_json(const AffineMonoid& Q) {
  Json gens = Json::array();
  for (const auto& g : Q.generators) {
    Json row = Json::array();
    for (const auto& c : g) row.push_back(int_to_json(c));
    gens.push_back(row);
  }
  return {{"ambient_rank", Q.ambient_rank}, {"level", Q.level}, {"scale_base", int_to_json(Q.scale_base)},
          {"generators", gens}};
}

Json to_json(const SeriesRingDesc& d) {
  Json rel = nullptr;
  if (d.relation_f) {
    rel = Json::array();
    for (const auto& t : *d.relation_f) rel.push_back(to_json(t));
  }
  Json mons = Json::array();
  for (const auto& m : d.monomial_relations) mons.push_back(to_json(m));
  return {{"monoid", to_json(d.monoid_part)},
          {"free_rank", d.free_rank},
          {"free_level", d.free_level},
          {"p", int_to_json(d.p)},
          {"precision", d.precision},
          {"cutoff", rational_to_json(d.cutoff)},
          {"characteristic", d.characteristic == Characteristic::Mixed ? "mixed" : "equal"},
          {"relation_f", rel},
          {"monomial_relations", mons}};
}

Json to_json(const TowerDesc& T) {
  Json levels = Json::array();
  for (const auto& l : T.levels) levels.push_back(to_json(l));
  Json base = Json::array();
  for (const auto& t : T.base_ideal) base.push_back(to_json(t));
  return {{"levels", levels}, {"transitions", "inclusion"}, {"base_ideal", base}};
}

Json to_json(const LogRegPresentation& P) {
  Json f = Json::array();
  for (const auto& t : P.f) f.push_back(to_json(t));
  return {{"name", P.name}, {"Q", to_json(P.Q)}, {"r", P.r}, {"p", int_to_json(P.p)}, {"f", f}, {"labels", P.labels}};
}

Json to_json(const FinAbelianGroup& G) {
  Json inv = Json::array();
  for (const auto& n : G.invariant_factors) inv.push_back(int_to_json(n));
  return {{"free_rank", G.free_rank},
          {"invariant_factors", inv},
          {"torsion_order", int_to_json(G.torsion_order())},
          {"description", G.to_string()}};
}

Json to_json(const Cutoff& c) { return {{"D", rational_to_json(c.D)}, {"N", c.N}, {"depth", c.depth}}; }

MonoidElem elem_from_json(const Json& j, const std::string& path) {
  reject_unknown(j, path, {"coords", "level"});
  MonoidElem e;
  const std::string cp = field(path, "coords");
  const Json& coords = require_array(require(j, path, "coords"), cp);
  for (std::size_t i = 0; i < coords.size(); ++i) e.coords.push_back(int_from_json(coords[i], index(cp, i)));
  if (j.contains("level")) e.level = size_from_json(j["level"], field(path, "level"));
  return e;
}

Term term_from_json(const Json& j, const std::string& path) {
  reject_unknown(j, path, {"exponent", "coeff"});
  return {elem_from_json(require(j, path, "exponent"), field(path, "exponent")),
          int_from_json(require(j, path, "coeff"), field(path, "coeff"))};
}

AffineMonoid monoid_from_json(const Json& j, const std::string& path) {
  reject_unknown(j, path, {"kind", "ambient_rank", "level", "scale_base", "generators"});
  AffineMonoid Q;
  Q.ambient_rank = size_from_json(require(j, path, "ambient_rank"), field(path, "ambient_rank"));
  if (j.contains("level")) Q.level = size_from_json(j["level"], field(path, "level"));
  Q.scale_base = int_from_json(require(j, path, "scale_base"), field(path, "scale_base"));
  const std::string gp = field(path, "generators");
  const Json& gens = require_array(require(j, path, "generators"), gp);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string rp = index(gp, i);
    const Json& row = require_array(gens[i], rp);
    if (row.size() != Q.ambient_rank)
      throw bad(rp, "generator has length " + std::to_string(row.size()) + ", expected " +
                        std::to_string(Q.ambient_rank));
    IntVec g;
    for (std::size_t k = 0; k < row.size(); ++k) g.push_back(int_from_json(row[k], index(rp, k)));
    Q.generators.push_back(std::move(g));
  }
  wrap_validation(path, [&] {
    Q.validate();
    return 0;
  });
  return Q;
}

SeriesRingDesc ring_from_json(const Json& j, const std::string& path) {
  reject_unknown(j, path,
                 {"kind", "monoid", "free_rank", "free_level", "p", "precision", "cutoff", "characteristic",
                  "relation_f", "monomial_relations"});
  SeriesRingDesc d;
  d.monoid_part = monoid_from_json(require(j, path, "monoid"), field(path, "monoid"));
  d.free_rank = size_from_json(require(j, path, "free_rank"), field(path, "free_rank"));
  if (j.contains("free_level")) d.free_level = size_from_json(j["free_level"], field(path, "free_level"));
  d.p = int_from_json(require(j, path, "p"), field(path, "p"));
  d.precision = size_from_json(require(j, path, "precision"), field(path, "precision"));
  d.cutoff = rational_from_json(require(j, path, "cutoff"), field(path, "cutoff"));
  const std::string ch = string_from_json(require(j, path, "characteristic"), field(path, "characteristic"));
  if (ch == "mixed")
    d.characteristic = Characteristic::Mixed;
  else if (ch == "equal")
    d.characteristic = Characteristic::Equal;
  else
    throw bad(field(path, "characteristic"), "expected \"mixed\" or \"equal\"");
  if (j.contains("relation_f") && !j["relation_f"].is_null()) {
    const std::string rp = field(path, "relation_f");
    const Json& rel = require_array(j["relation_f"], rp);
    std::vector<Term> f;
    for (std::size_t i = 0; i < rel.size(); ++i) f.push_back(term_from_json(rel[i], index(rp, i)));
    d.relation_f = std::move(f);
  }
  if (j.contains("monomial_relations")) {
    const std::string mp = field(path, "monomial_relations");
    const Json& mons = require_array(j["monomial_relations"], mp);
    for (std::size_t i = 0; i < mons.size(); ++i) d.monomial_relations.push_back(elem_from_json(mons[i], index(mp, i)));
  }
  wrap_validation(path, [&] {
    d.validate();
    return 0;
  });
  return d;
}

TowerDesc tower_from_json(const Json& j, const std::string& path) {
  reject_unknown(j, path, {"kind", "levels", "transitions", "base_ideal"});
  TowerDesc T;
  const std::string lp = field(path, "levels");
  const Json& levels = require_array(require(j, path, "levels"), lp);
  for (std::size_t i = 0; i < levels.size(); ++i) T.levels.push_back(ring_from_json(levels[i], index(lp, i)));
  if (j.contains("transitions") && string_from_json(j["transitions"], field(path, "transitions")) != "inclusion")
    throw bad(field(path, "transitions"), "only \"inclusion\" transitions are supported");
  if (j.contains("base_ideal")) {
    const std::string bp = field(path, "base_ideal");
    const Json& base = require_array(j["base_ideal"], bp);
    for (std::size_t i = 0; i < base.size(); ++i) T.base_ideal.push_back(term_from_json(base[i], index(bp, i)));
  }
  wrap_validation(path, [&] {
    Tower check(T);
    return 0;
  });
  return T;
}

LogRegPresentation presentation_from_json(const Json& j, const std::string& path) {
  reject_unknown(j, path, {"kind", "name", "Q", "r", "p", "f", "labels"});
  LogRegPresentation P;
  if (j.contains("name")) P.name = string_from_json(j["name"], field(path, "name"));
  P.Q = monoid_from_json(require(j, path, "Q"), field(path, "Q"));
  P.r = size_from_json(require(j, path, "r"), field(path, "r"));
  P.p = int_from_json(require(j, path, "p"), field(path, "p"));
  const std::string fp = field(path, "f");
  const Json& f = require_array(require(j, path, "f"), fp);
  for (std::size_t i = 0; i < f.size(); ++i) P.f.push_back(term_from_json(f[i], index(fp, i)));
  if (j.contains("labels")) {
    const std::string lp = field(path, "labels");
    const Json& labels = require_array(j["labels"], lp);
    for (std::size_t i = 0; i < labels.size(); ++i) P.labels.push_back(string_from_json(labels[i], index(lp, i)));
  }
  wrap_validation(path, [&] {
    P.validate();
    return 0;
  });
  return P;
}

Json descriptor_to_json(const Descriptor& d) {
  return std::visit(
      [](const auto& x) {
        Json j = to_json(x);
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AffineMonoid>) j["kind"] = "monoid";
        if constexpr (std::is_same_v<T, SeriesRingDesc>) j["kind"] = "ring";
        if constexpr (std::is_same_v<T, TowerDesc>) j["kind"] = "tower";
        if constexpr (std::is_same_v<T, LogRegPresentation>) j["kind"] = "presentation";
        return j;
      },
      d);
}

Descriptor descriptor_from_json(const Json& j) {
  const std::string kind = string_from_json(require(j, "", "kind"), "kind");
  if (kind == "monoid") return monoid_from_json(j);
  if (kind == "ring") return ring_from_json(j);
  if (kind == "tower") return tower_from_json(j);
  if (kind == "presentation") return presentation_from_json(j);
  throw bad("kind", "unknown descriptor kind \"" + kind + "\"");
}

Json parse_json(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw Error(ErrorCode::ParseError, "empty input");
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json(ss.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

Descriptor load_descriptor(const std::string& path) { return descriptor_from_json(load_json_file(path)); }

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << dump_json(j);
}

namespace {

Json witness_json(const std::optional<MonoidElem>& w) { return w ? to_json(*w) : Json(nullptr); }

Json series_json(const Series& s) {
  Json out = Json::array();
  for (const auto& [e, c] : s.terms()) out.push_back({{"exponent", to_json(e)}, {"coeff", int_to_json(c)}});
  return out;
}

Json checks_json(const std::vector<CheckEntry>& checks) {
  Json out = Json::array();
  for (const auto& c : checks)
    out.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", witness_json(c.witness)}, {"detail", c.detail}});
  return out;
}

}  // namespace

Json report_to_json(const AxiomReport& r) {
  Json axioms = Json::object();
  for (const char* a : {"a", "b", "c", "d", "e", "f", "g"}) axioms[a] = Json::array();
  for (const auto& e : r.entries)
    axioms[e.axiom].push_back({{"axiom", e.axiom},
                               {"check", e.check},
                               {"level", e.level},
                               {"pass", e.pass()},
                               {"status", std::string(axiom_status_name(e.status))},
                               {"witness", witness_json(e.witness)},
                               {"detail", e.detail},
                               {"cutoff", to_json(r.cutoff)}});
  return {{"all_pass", r.all_pass()}, {"failed_axioms", r.failed_axioms()}, {"cutoff", to_json(r.cutoff)},
          {"axioms", axioms}};
}

Json report_to_json(const TiltReport& r) {
  return {{"level", r.level}, {"cutoff", to_json(r.cutoff)}, {"all_pass", r.all_pass()}, {"checks", checks_json(r.checks)}};
}

Json report_to_json(const TiltVerification& r) {
  return {{"cutoff", to_json(r.cutoff)}, {"all_pass", r.all_pass()}, {"checks", checks_json(r.checks)}};
}

Json report_to_json(const BasisCorrespondence& b) {
  Json pairs = Json::array();
  for (const auto& [top, image] : b.pairs) pairs.push_back({{"top", to_json(top)}, {"image", to_json(image)}});
  return {{"level", b.level},    {"ideal", b.ideal},   {"bijective", b.bijective},
          {"pairs", pairs},      {"witness", witness_json(b.witness)}, {"detail", b.detail}};
}

Json report_to_json(const PillarSystem& ps, const Tower& T) {
  Json exps = Json::array(), gens = Json::array();
  for (const auto& e : ps.exponents) exps.push_back(to_json(e));
  for (const auto& g : ps.generators) gens.push_back(series_json(g));
  std::vector<bool> compat(ps.compatible.begin(), ps.compatible.end());
  std::vector<bool> chain(ps.ideal_chain.begin(), ps.ideal_chain.end());
  return {{"zero_ideal", ps.zero_ideal}, {"exponents", exps},     {"generators", gens},
          {"compatible", compat},       {"ideal_chain", chain},   {"candidates", ps.candidates},
          {"cutoff", to_json(T.cutoff())}};
}

Json report_to_json(const ClassGroupReport& r) {
  Json ell = Json::object();
  for (const auto& [l, G] : r.ell_primary) ell[l.str()] = to_json(G);
  return {{"group", to_json(r.group)},
          {"facet_count", r.facet_count},
          {"torsion_order", int_to_json(r.torsion_order)},
          {"ell_primary", ell}};
}

Json report_to_json(const PrimeToPReport& r) {
  Json primes = Json::array();
  for (const auto& l : r.primes) primes.push_back(int_to_json(l));
  return {{"p", int_to_json(r.p)},
          {"group", to_json(r.group)},
          {"order", int_to_json(r.order)},
          {"primes", primes},
          {"finite", r.finite}};
}

Json report_to_json(const KatoDimReport& r) {
  return {{"dim_R", r.dim_R}, {"dim_R_mod_I_alpha", r.dim_R_mod_I}, {"dim_Q", r.dim_Q}, {"consistent", r.consistent}};
}

Json report_to_json(const OmegaModule& m) {
  return {{"d", m.d},
          {"p", int_to_json(m.p)},
          {"case", m.case_tag},
          {"dimension", m.dimension},
          {"basis", m.basis_labels}};
}

Json report_to_json(const std::vector<DiagramCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks)
    out.push_back({{"level", c.level},
                   {"identity", c.identity},
                   {"checked", c.checked},
                   {"ok", c.ok()},
                   {"failure", witness_json(c.failure)}});
  return out;
}

}  // namespace ptlab

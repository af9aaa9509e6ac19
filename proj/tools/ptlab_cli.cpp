// ptlab command-line front end.  Reports are JSON with sorted keys on stdout
// or --output.  Exit codes: 0 all checks pass, 1 a verification failed,
// 2 input or usage error.

#include "CLI11.hpp"

#include "ptlab/classgroup.hpp"
#include "ptlab/coeffring.hpp"
#include "ptlab/error.hpp"
#include "ptlab/json_io.hpp"
#include "ptlab/logreg.hpp"
#include "ptlab/monoid.hpp"
#include "ptlab/tilt.hpp"
#include "ptlab/tower.hpp"

#include <fstream>
#include <iostream>

using namespace ptlab;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct RunConfig {
  std::string preset;
  std::string input;
  std::string output;
  int p = 2;
  std::size_t d = 2;
  std::size_t depth = 2;
  std::string cutoff = "4";
  std::size_t precision = 2;
  std::size_t level = 1;
  bool equal = false;
  bool verbose = false;
};

struct Outcome {
  Json report;
  bool pass = true;
};

Error usage(const std::string& msg) { return Error(ErrorCode::InvalidArgument, msg); }

Rational cutoff_of(const RunConfig& c) {
  Rational D = rational_from_json(Json(c.cutoff), "--cutoff");
  if (D <= 0) throw usage("--cutoff must be positive");
  return D;
}

void check_config(const RunConfig& c) {
  if (!is_prime(c.p)) throw usage("--p must be prime");
  if (c.precision < 1) throw usage("--precision must be at least 1");
  cutoff_of(c);
}

Json load_input(const RunConfig& c) {
  if (c.input.empty()) throw usage("--input is required");
  return load_json_file(c.input);
}

AffineMonoid monoid_input(const RunConfig& c) {
  Descriptor d = descriptor_from_json(load_input(c));
  if (auto* Q = std::get_if<AffineMonoid>(&d)) return *Q;
  if (auto* P = std::get_if<LogRegPresentation>(&d)) return P->Q;
  throw usage("expected a monoid descriptor");
}

LogRegPresentation presentation_input(const RunConfig& c) {
  if (!c.preset.empty()) {
    if (!c.input.empty()) throw usage("--preset and --input are exclusive");
    return preset(c.preset, c.p, c.d);
  }
  Descriptor d = descriptor_from_json(load_input(c));
  if (auto* P = std::get_if<LogRegPresentation>(&d)) return *P;
  throw usage("expected a presentation descriptor");
}

// A tower from --preset, a presentation file or a tower file.
TowerDesc tower_input(const RunConfig& c) {
  if (c.preset.empty() && !c.input.empty()) {
    Descriptor d = descriptor_from_json(load_input(c));
    if (auto* T = std::get_if<TowerDesc>(&d)) return *T;
    if (auto* P = std::get_if<LogRegPresentation>(&d)) return build_tower(*P, c.depth, cutoff_of(c), c.precision);
    throw usage("expected a tower or presentation descriptor");
  }
  if (c.preset.empty()) throw usage("one of --preset or --input is required");
  return build_tower(presentation_input(c), c.depth, cutoff_of(c), c.precision);
}

Json with_kind(Json j, const char* kind) {
  j["kind"] = kind;
  return j;
}

Outcome monoid_check(const RunConfig& c) {
  AffineMonoid Q = monoid_input(c);
  Json r;
  const bool sharp = is_sharp(Q);
  r["sharp"] = sharp;
  r["dimension"] = dimension(Q);
  r["ambient_rank"] = Q.ambient_rank;
  r["saturated"] = is_saturated(Q);
  if (sharp) {
    Json hb = Json::array();
    for (const auto& h : hilbert_basis(Q)) {
      Json row = Json::array();
      for (const auto& x : h) row.push_back(int_to_json(x));
      hb.push_back(row);
    }
    r["hilbert_basis"] = hb;
  }
  return {r, true};
}

Outcome monoid_saturate(const RunConfig& c) {
  AffineMonoid Q = monoid_input(c);
  return {with_kind(to_json(saturate(Q)), "monoid"), true};
}

Outcome monoid_divide(const RunConfig& c) {
  AffineMonoid Q = monoid_input(c);
  AffineMonoid D = p_divide(Q, c.level);
  Json r;
  r["monoid"] = with_kind(to_json(D), "monoid");
  r["level"] = c.level;
  // (Q^(i))^gp / (Q^(i-1))^gp.
  if (c.level > 0) r["layer_quotient"] = to_json(layer_quotient(Q, c.level - 1));
  r["exact"] = is_exact_submonoid(Q, D);
  return {r, true};
}

Outcome monoid_embed(const RunConfig& c) {
  AffineMonoid Q = monoid_input(c);
  IntMatrix E = exact_embed_Nd(Q);
  Json rows = Json::array();
  for (std::size_t i = 0; i < E.rows(); ++i) {
    Json row = Json::array();
    for (const auto& x : E.row(i)) row.push_back(int_to_json(x));
    rows.push_back(row);
  }
  return {{{"embedding", rows}, {"target_rank", E.rows()}}, true};
}

Outcome monoid_classgroup(const RunConfig& c) {
  AffineMonoid Q = monoid_input(c);
  ClassGroupReport cg = class_group(Q);
  Json r = report_to_json(cg);
  PrimeToPReport pp = prime_to_p_report(cg.group, c.p);
  r["prime_to_p"] = report_to_json(pp);
  return {r, pp.finite};
}

Outcome tower_build(const RunConfig& c) {
  TowerDesc T = tower_input(c);
  Tower check(T);
  return {with_kind(to_json(T), "tower"), true};
}

Outcome tower_verify(const RunConfig& c) {
  Tower T(tower_input(c));
  AxiomReport r = verify_tower(T);
  return {report_to_json(r), r.all_pass()};
}

Outcome tower_tilt(const RunConfig& c) {
  LogRegPresentation P = presentation_input(c);
  TiltVerification v = verify_tilt(P, c.depth, cutoff_of(c), c.precision);
  Json r = report_to_json(v);
  r["presentation"] = P.name;
  r["predicted"] = with_kind(to_json(predict_tilt(P, c.depth, cutoff_of(c))), "tower");
  return {r, v.all_pass()};
}

Outcome tower_exactstilt(const RunConfig& c) {
  Tower T(tower_input(c));
  bool pass = true;
  Json levels = Json::array();
  for (std::size_t j = 0; j <= T.depth(); ++j) {
    TiltReport tr = verify_exactstilt(T, j);
    BasisCorrespondence iso = tilt_mod_pillar_iso(T, j);
    BasisCorrespondence own = tilt_mod_own_pillar(T, j);
    pass = pass && tr.all_pass() && iso.bijective && own.bijective;
    levels.push_back({{"exactstilt", report_to_json(tr)},
                      {"mod_I0", report_to_json(iso)},
                      {"mod_Ij", report_to_json(own)}});
  }
  Json inv = Json::array();
  for (const auto& r : inverse_perfection_is_perfect(T)) {
    pass = pass && r.all_pass();
    inv.push_back(report_to_json(r));
  }
  auto diagrams = diagram_checks(T);
  for (const auto& d : diagrams) pass = pass && d.ok();
  Json r{{"levels", levels},
         {"inverse_perfection", inv},
         {"diagram_checks", report_to_json(diagrams)},
         {"pillars", report_to_json(pillar_system(T), T)},
         {"all_pass", pass}};
  return {r, pass};
}

RegularBase base_of(const RunConfig& c) {
  return {c.d, c.p, c.equal ? Characteristic::Equal : Characteristic::Mixed, true};
}

// {"d", "p", "characteristic", "elements": [[term, ...], ...], "e": [...]}.
struct RegularityInput {
  RegularBase base;
  std::vector<Series> elements;
  std::vector<std::size_t> exponents;
};

RegularityInput regularity_input(const RunConfig& c) {
  Json j = load_input(c);
  RegularityInput in;
  in.base.d = static_cast<std::size_t>(int_from_json(j.at("d"), "d"));
  in.base.p = int_from_json(j.at("p"), "p");
  const std::string ch = j.value("characteristic", "mixed");
  if (ch != "mixed" && ch != "equal") throw Error(ErrorCode::InvariantViolation, "characteristic: expected mixed or equal");
  in.base.characteristic = ch == "equal" ? Characteristic::Equal : Characteristic::Mixed;
  in.base.perfect_residue_field = j.value("perfect_residue_field", true);
  omega_dim(in.base);
  RingPtr R = in.base.ring();
  const Json& elems = j.at("elements");
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < elems[i].size(); ++k)
      terms.push_back(term_from_json(elems[i][k], "elements[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    in.elements.push_back(Series::from_terms(R, terms));
  }
  if (j.contains("e"))
    for (std::size_t i = 0; i < j["e"].size(); ++i)
      in.exponents.push_back(static_cast<std::size_t>(int_from_json(j["e"][i], "e[" + std::to_string(i) + "]")));
  return in;
}

Json classes_json(const RegularityInput& in) {
  Json out = Json::array();
  for (const auto& x : in.elements) {
    Json row = Json::array();
    for (const auto& v : d_class(in.base, x)) row.push_back(int_to_json(v));
    out.push_back(row);
  }
  return out;
}

Outcome regularity_omega(const RunConfig& c) { return {report_to_json(omega_dim(base_of(c))), true}; }

Outcome regularity_maximal(const RunConfig& c) {
  RegularityInput in = regularity_input(c);
  bool ok = is_maximal_sequence(in.base, in.elements);
  return {{{"omega", report_to_json(omega_dim(in.base))}, {"d_classes", classes_json(in)}, {"maximal", ok}}, ok};
}

Outcome regularity_kummer(const RunConfig& c) {
  RegularityInput in = regularity_input(c);
  bool ok = kummer_regularity(in.base, in.elements, in.exponents);
  return {{{"omega", report_to_json(omega_dim(in.base))}, {"d_classes", classes_json(in)}, {"regular", ok}}, ok};
}

void emit(const RunConfig& c, const Json& report) {
  const std::string text = dump_json(report);
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + c.output);
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptlab: towers of log-regular rings, tilts and class groups"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<Outcome(const RunConfig&)> action;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "JSON descriptor");
    sub->add_option("--output", cfg.output, "write the report here instead of stdout");
    sub->add_option("--p", cfg.p, "prime p")->capture_default_str();
    sub->add_flag("-v,--verbose", cfg.verbose, "print a summary line on stderr");
  };
  auto add_tower = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset, "unramified_rlr or quadric");
    sub->add_option("--d", cfg.d, "rank for unramified_rlr")->capture_default_str();
    sub->add_option("--depth", cfg.depth, "tower depth m")->capture_default_str();
    sub->add_option("--cutoff", cfg.cutoff, "degree cutoff D")->capture_default_str();
    sub->add_option("--precision", cfg.precision, "coefficient precision N")->capture_default_str();
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<Outcome(const RunConfig&)> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  CLI::App* monoid = app.add_subcommand("monoid", "affine monoid tools");
  monoid->require_subcommand(1);
  leaf(monoid, "check", "saturation, sharpness, dimension and Hilbert basis", monoid_check);
  leaf(monoid, "saturate", "saturation in Q^gp", monoid_saturate);
  leaf(monoid, "divide", "the p-division layer Q^(i)", monoid_divide)
      ->add_option("--level", cfg.level, "division level i")
      ->capture_default_str();
  leaf(monoid, "embed", "exact embedding into N^facets", monoid_embed);
  leaf(monoid, "classgroup", "divisor class group of k[Q]", monoid_classgroup);

  CLI::App* tower = app.add_subcommand("tower", "towers and tilts");
  tower->require_subcommand(1);
  add_tower(leaf(tower, "build", "tower descriptor for a presentation", tower_build));
  add_tower(leaf(tower, "verify", "axioms (a)-(g)", tower_verify));
  add_tower(leaf(tower, "tilt", "computed versus predicted tilt", tower_tilt));
  add_tower(leaf(tower, "exactstilt", "pillars, mod-pillar bijections and torsion comparison", tower_exactstilt));

  CLI::App* reg = app.add_subcommand("regularity", "regularity over C(F_p)[[x]] and F_p[[x]]");
  reg->require_subcommand(1);
  CLI::App* omega = leaf(reg, "omega", "dimension of the differential module", regularity_omega);
  omega->add_option("--d", cfg.d, "number of variables")->capture_default_str();
  omega->add_flag("--equal", cfg.equal, "equal characteristic base");
  leaf(reg, "maximal", "maximal sequence test", regularity_maximal);
  leaf(reg, "kummer", "regularity of A[T]/(T^e - f)", regularity_kummer);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInputError;
  }

  try {
    check_config(cfg);
    Outcome out = action(cfg);
    emit(cfg, out.report);
    if (cfg.verbose) std::cerr << (out.pass ? "pass" : "FAIL") << "\n";
    return out.pass ? kPass : kFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kInputError;
  }
}

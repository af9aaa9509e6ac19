#include "doctest.h"

#include "ptlab/error.hpp"
#include "ptlab/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

using namespace ptlab;

namespace {

std::string fixture_path(const std::string& name) { return std::string(PTLAB_FIXTURE_DIR) + "/" + name + ".json"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_file(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / ("ptlab_test_" + name);
  std::ofstream(path, std::ios::binary) << contents;
  return path.string();
}

std::optional<Error> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  return std::nullopt;
}

template <class T>
T round_trip(const T& x) {
  return std::get<T>(descriptor_from_json(parse_json(dump_json(descriptor_to_json(Descriptor{x})))));
}

}  // namespace

TEST_CASE("integers and rationals") {
  CHECK(int_to_json(Int(-7)) == Json(-7));
  Int big = Int(1) << 80;
  CHECK(int_to_json(big).is_string());
  CHECK(int_from_json(int_to_json(big), "x") == big);
  CHECK(rational_to_json(Rational(3, 6)) == Json("1/2"));
  CHECK(rational_to_json(Rational(4)) == Json(4));
  CHECK(rational_from_json(Json("-5/10"), "x") == Rational(-1, 2));
  CHECK(rational_from_json(Json(3), "x") == 3);
  CHECK(error_of([] { int_from_json(Json("12a"), "q"); })->code() == ErrorCode::InvariantViolation);
  CHECK(error_of([] { int_from_json(Json(1.5), "q"); })->code() == ErrorCode::InvariantViolation);
  CHECK(error_of([] { rational_from_json(Json("1/0"), "q"); })->code() == ErrorCode::InvariantViolation);
}

TEST_CASE("descriptors round-trip") {
  CHECK(round_trip(quadric(3).Q) == quadric(3).Q);
  CHECK(round_trip(quadric(2)) == quadric(2));
  CHECK(round_trip(unramified_rlr(5, 3)) == unramified_rlr(5, 3));
  TowerDesc T = build_tower(quadric(2), 2, 4, 2);
  CHECK(round_trip(T) == T);
  TowerDesc pred = predict_tilt(unramified_rlr(3, 2), 2, Rational(7, 2));
  CHECK(round_trip(pred) == pred);
  SeriesRingDesc d = T.levels[1];
  d.monomial_relations = {MonoidElem{{1, 0, 0, 1}, 1}};
  CHECK(round_trip(d) == d);
}

TEST_CASE("fixture files are reproduced byte for byte") {
  for (std::string name : {"quadric_monoid", "numerical_2_3", "a1_monoid", "quadric_presentation", "sabotage_a",
                           "sabotage_b", "sabotage_c", "sabotage_d", "sabotage_e", "sabotage_f", "sabotage_g",
                           "nondomain_tower", "perfect_tower"}) {
    CAPTURE(name);
    const std::string text = read_file(fixture_path(name));
    CHECK(dump_json(descriptor_to_json(load_descriptor(fixture_path(name)))) == text);
  }
}

TEST_CASE("quadric monoid file loads as the quadric cone") {
  Descriptor d = load_descriptor(fixture_path("quadric_monoid"));
  REQUIRE(std::holds_alternative<AffineMonoid>(d));
  CHECK(std::get<AffineMonoid>(d) == quadric(2).Q);
}

TEST_CASE("parse errors") {
  auto empty = error_of([] { load_descriptor(temp_file("empty.json", "")); });
  REQUIRE(empty);
  CHECK(empty->code() == ErrorCode::ParseError);
  auto broken = error_of([] { parse_json("{\n  \"kind\": \"monoid\",\n  oops\n}"); });
  REQUIRE(broken);
  CHECK(broken->code() == ErrorCode::ParseError);
  CHECK(std::string(broken->what()).find("line 3") != std::string::npos);
  CHECK(error_of([] { load_json_file("/nonexistent/ptlab.json"); })->code() == ErrorCode::ParseError);
}

TEST_CASE("invariant violations name the field") {
  Json j = descriptor_to_json(Descriptor{quadric(2).Q});
  j["generators"][1] = Json::array({1, 0, 1});
  auto e = error_of([&] { descriptor_from_json(j); });
  REQUIRE(e);
  CHECK(e->code() == ErrorCode::InvariantViolation);
  CHECK(std::string(e->what()).find("generators[1]") != std::string::npos);

  Json t = descriptor_to_json(Descriptor{build_tower(quadric(2), 2, 4, 2)});
  t["levels"][1]["monoid"]["generators"][0] = Json::array({1});
  auto te = error_of([&] { descriptor_from_json(t); });
  REQUIRE(te);
  CHECK(std::string(te->what()).find("levels[1].monoid.generators[0]") != std::string::npos);

  Json u = descriptor_to_json(Descriptor{quadric(2).Q});
  u["colour"] = "red";
  CHECK(error_of([&] { descriptor_from_json(u); })->code() == ErrorCode::InvariantViolation);

  Json k = descriptor_to_json(Descriptor{quadric(2).Q});
  k["kind"] = "sheaf";
  CHECK(error_of([&] { descriptor_from_json(k); })->code() == ErrorCode::InvariantViolation);

  Json c = descriptor_to_json(Descriptor{build_tower(quadric(2), 2, 4, 2)});
  c["levels"][2]["characteristic"] = "weird";
  auto ce = error_of([&] { descriptor_from_json(c); });
  CHECK(std::string(ce->what()).find("levels[2].characteristic") != std::string::npos);

  Json m = descriptor_to_json(Descriptor{build_tower(quadric(2), 2, 4, 2)});
  m["levels"][1]["p"] = 3;
  CHECK(error_of([&] { descriptor_from_json(m); })->code() == ErrorCode::InvariantViolation);

  Json pr = descriptor_to_json(Descriptor{quadric(2)});
  pr["p"] = 6;
  CHECK(error_of([&] { descriptor_from_json(pr); })->code() == ErrorCode::InvariantViolation);
}

TEST_CASE("reports are deterministic, sorted and newline-terminated") {
  Tower T(build_tower(quadric(2), 2, 4, 2));
  const std::string a = dump_json(report_to_json(verify_tower(T)));
  const std::string b = dump_json(report_to_json(verify_tower(Tower(build_tower(quadric(2), 2, 4, 2)))));
  CHECK(a == b);
  CHECK(a.back() == '\n');
  Json j = parse_json(a);
  CHECK(j["all_pass"] == true);
  CHECK(j["axioms"].size() == 7);
  CHECK(j["cutoff"]["D"] == 4);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(a.find("\n  \"all_pass\"") != std::string::npos);

  Json pill = report_to_json(pillar_system(T), T);
  CHECK(pill["exponents"].size() == 3);
  Json cg = report_to_json(class_group(quadric(2).Q));
  CHECK(cg["group"]["description"] == class_group(quadric(2).Q).group.to_string());
  CHECK(report_to_json(tilt_mod_pillar_iso(T, 0))["bijective"] == true);
  CHECK(report_to_json(diagram_checks(T)).size() == 4);
}

TEST_CASE("save and load") {
  auto path = std::filesystem::temp_directory_path() / "ptlab_test_save.json";
  Json j = descriptor_to_json(Descriptor{quadric(3)});
  save_json_file(path.string(), j);
  CHECK(load_json_file(path.string()) == j);
  CHECK(read_file(path.string()) == dump_json(j));
}

// JSON descriptors and reports.  Objects are emitted with sorted keys and
// two-space indentation, newline-terminated.
#pragma once

#include "ptlab/classgroup.hpp"
#include "ptlab/logreg.hpp"
#include "ptlab/tilt.hpp"
#include "ptlab/tower.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace ptlab {

using Json = nlohmann::json;

Json int_to_json(const Int& v);
Json rational_to_json(const Rational& v);
Json to_json(const MonoidElem& e);
Json to_json(const Term& t);
Json to_json(const AffineMonoid& Q);
Json to_json(const SeriesRingDesc& d);
Json to_json(const TowerDesc& T);
Json to_json(const LogRegPresentation& P);
Json to_json(const FinAbelianGroup& G);
Json to_json(const Cutoff& c);

// Readers check every field and report the failing path, e.g.
// "levels[1].monoid.generators[0]".
Int int_from_json(const Json& j, const std::string& path);
Rational rational_from_json(const Json& j, const std::string& path);
MonoidElem elem_from_json(const Json& j, const std::string& path);
Term term_from_json(const Json& j, const std::string& path);
AffineMonoid monoid_from_json(const Json& j, const std::string& path = "");
SeriesRingDesc ring_from_json(const Json& j, const std::string& path = "");
TowerDesc tower_from_json(const Json& j, const std::string& path = "");
LogRegPresentation presentation_from_json(const Json& j, const std::string& path = "");

using Descriptor = std::variant<AffineMonoid, SeriesRingDesc, TowerDesc, LogRegPresentation>;

// Adds "kind": "monoid" | "ring" | "tower" | "presentation".
Json descriptor_to_json(const Descriptor& d);
Descriptor descriptor_from_json(const Json& j);

// Throws ParseError with line and column.
Json parse_json(const std::string& text);
Json load_json_file(const std::string& path);
Descriptor load_descriptor(const std::string& path);
std::string dump_json(const Json& j);
void save_json_file(const std::string& path, const Json& j);

Json report_to_json(const AxiomReport& r);
Json report_to_json(const TiltReport& r);
Json report_to_json(const TiltVerification& r);
Json report_to_json(const BasisCorrespondence& b);
Json report_to_json(const PillarSystem& ps, const Tower& T);
Json report_to_json(const ClassGroupReport& r);
Json report_to_json(const PrimeToPReport& r);
Json report_to_json(const KatoDimReport& r);
Json report_to_json(const OmegaModule& m);
Json report_to_json(const std::vector<DiagramCheck>& checks);

}  // namespace ptlab

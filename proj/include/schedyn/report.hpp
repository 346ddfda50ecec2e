#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "schedyn/analytic.hpp"
#include "schedyn/claims.hpp"
#include "schedyn/dynamics.hpp"
#include "schedyn/geometry.hpp"

namespace schedyn {

// Key order is preserved so documents serialize deterministically.
using Json = nlohmann::ordered_json;

// The envelope every machine-readable report ships in:
// {schema_version, tool, version, verb, params, result, summary}.
Json report_envelope(std::string_view verb, Json params, Json result,
                     std::string_view summary);

// Regions appear in JSON as their labels ("B4", "G(0,3)", "BASE"), which
// parse_region round-trips.
std::string region_label(const Region& r, Mode mode);

Json to_json(const OrbitClass& oc, Mode mode);
Json to_json(const EscapeCertificate& cert, Mode mode);
Json to_json(const TableRow& row, Mode mode);
Json to_json(const ClaimReport& report);
Json to_json(const StructureCertificate& cert);
Json to_json(const RealizabilityReport& report);

std::string render_table_text(const std::vector<TableRow>& rows, Mode mode);
std::string render_claims_text(const ClaimReport& report);
std::string render_structure_text(const StructureCertificate& cert);

}  // namespace schedyn

#include "schedyn/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "schedyn/version.hpp"

namespace schedyn {

Json report_envelope(std::string_view verb, Json params, Json result,
                     std::string_view summary) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["verb"] = std::string(verb);
  doc["params"] = std::move(params);
  doc["result"] = std::move(result);
  doc["summary"] = std::string(summary);
  return doc;
}

std::string region_label(const Region& r, Mode mode) {
  return mode == Mode::Grid ? to_grid_string(r) : to_string(r);
}

Json to_json(const OrbitClass& oc, Mode mode) {
  Json j;
  j["kind"] = to_string(oc.kind);
  switch (oc.kind) {
    case OrbitKind::Periodic:
      j["period"] = oc.period;
      break;
    case OrbitKind::Preperiodic:
      j["tail"] = oc.tail;
      j["period"] = oc.period;
      break;
    case OrbitKind::Wandering:
      if (oc.certificate) j["certificate"] = to_json(*oc.certificate, mode);
      break;
  }
  return j;
}

Json to_json(const EscapeCertificate& cert, Mode mode) {
  Json j;
  j["transient"] = Json::array();
  for (const Region& r : cert.transient)
    j["transient"].push_back(region_label(r, mode));
  j["guard_cycle"] = Json::array();
  for (const CycleStep& step : cert.guard_cycle) {
    Json s;
    s["rules"] = step.rules;
    s["shift"] = step.shift;
    j["guard_cycle"].push_back(std::move(s));
  }
  j["net_shift"] = cert.net_shift;
  return j;
}

Json to_json(const TableRow& row, Mode mode) {
  Json j;
  j["region"] = region_label(row.region, mode);
  j["f"] = to_json(row.under_f, mode);
  j["g"] = to_json(row.under_g, mode);
  j["gf"] = to_json(row.under_gf, mode);
  j["fg"] = to_json(row.under_fg, mode);
  return j;
}

Json to_json(const ClaimReport& report) {
  const Mode mode = claim_table(report.id).mode;
  Json j;
  j["id"] = report.id;
  j["checks"] = report.checks;
  j["assertions"] = Json::array();
  for (const ClaimAssertion& a : report.assertions) {
    Json aj;
    aj["pattern"] = a.pattern;
    aj["map"] = a.map_name;
    aj["expected"] = to_string(a.expected);
    aj["instances"] = a.instances;
    aj["passed"] = a.passed();
    if (!a.failures.empty()) {
      aj["failures"] = Json::array();
      for (const ClaimFailure& f : a.failures) {
        Json fj;
        fj["region"] = region_label(f.region, mode);
        fj["actual"] = to_string(f.actual);
        aj["failures"].push_back(std::move(fj));
      }
    }
    j["assertions"].push_back(std::move(aj));
  }
  j["failure_count"] = report.failure_count();
  j["passed"] = report.passed();
  return j;
}

namespace {

Json finite_or_label(double v, const char* label) {
  if (std::isfinite(v)) return v;
  return label;
}

Json to_json(const ConditionReport& c) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["witness"] = c.witness;
  return j;
}

}  // namespace

Json to_json(const StructureCertificate& cert) {
  Json j;
  j["passed"] = cert.passed;
  j["min_gap"] = cert.min_gap;
  j["disjoint"] = cert.disjoint;
  j["closest_pair"] = cert.closest_pair;
  j["conditions"] = Json::array(
      {to_json(cert.complement_connected), to_json(cert.locally_connected_at_inf),
       to_json(cert.bounded_interiors)});
  j["interior_diameter_bound"] =
      finite_or_label(cert.interior_diameter_bound, "unbounded");
  j["window"] = Json{{"xmin", cert.window.xmin},
                     {"xmax", cert.window.xmax},
                     {"ymin", cert.window.ymin},
                     {"ymax", cert.window.ymax}};
  j["grid_step"] = cert.grid_step;
  j["complement_cells"] = cert.complement_cell_count;
  j["unreachable_complement_cells"] = cert.unreachable_complement_cells;
  j["rings"] = Json::array();
  for (const RingReport& ring : cert.rings) {
    Json r;
    r["inner"] = ring.inner;
    r["outer"] = ring.outer;
    r["complement_cells"] = ring.complement_cells;
    r["all_reach_infinity"] = ring.all_reach_infinity;
    j["rings"].push_back(std::move(r));
  }
  return j;
}

Json to_json(const RealizabilityReport& report) {
  Json j;
  j["realizable"] = report.realizable();
  j["centre_matches"] = report.centre_matches;
  j["half_disk_contained"] = report.half_disk_contained;
  j["tolerance_positive"] = report.tolerance_positive;
  j["tolerance"] = report.tolerance;
  j["expected_centre"] = report.expected_centre;
  j["scheduled_centre"] = report.scheduled_centre;
  return j;
}

namespace {

std::string orbit_class_cell(const OrbitClass& oc) {
  std::ostringstream os;
  switch (oc.kind) {
    case OrbitKind::Periodic:
      os << "periodic(" << oc.period << ")";
      break;
    case OrbitKind::Preperiodic:
      os << "preperiodic(" << oc.tail << "+" << oc.period << ")";
      break;
    case OrbitKind::Wandering:
      os << "wandering";
      break;
  }
  return os.str();
}

}  // namespace

std::string render_table_text(const std::vector<TableRow>& rows, Mode mode) {
  const std::vector<std::string> headers{"region", "f", "g", "gf", "fg"};
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const TableRow& row : rows)
    cells.push_back({region_label(row.region, mode),
                     orbit_class_cell(row.under_f), orbit_class_cell(row.under_g),
                     orbit_class_cell(row.under_gf),
                     orbit_class_cell(row.under_fg)});

  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());

  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? "  " : "") << std::left << std::setw(int(width[c])) << row[c];
    os << "\n";
  };
  emit(headers);
  for (std::size_t c = 0; c < headers.size(); ++c)
    os << (c ? "  " : "") << std::string(width[c], '-');
  os << "\n";
  for (const auto& row : cells) emit(row);
  return os.str();
}

std::string render_claims_text(const ClaimReport& report) {
  const Mode mode = claim_table(report.id).mode;
  std::ostringstream os;
  os << "claims " << report.id << "\n";
  for (const ClaimAssertion& a : report.assertions) {
    os << "  " << a.pattern << ": " << to_string(a.expected) << " under "
       << a.map_name << " -- " << (a.passed() ? "ok" : "FAIL") << " ("
       << a.instances << " region" << (a.instances == 1 ? "" : "s") << ")\n";
    for (const ClaimFailure& f : a.failures)
      os << "      " << region_label(f.region, mode) << " classified "
         << to_string(f.actual) << "\n";
  }
  os << "  " << (report.passed() ? "all assertions hold" : "FAILURES above")
     << " (" << report.assertions.size() << " assertions, " << report.checks
     << " classifications)\n";
  return os.str();
}

std::string render_structure_text(const StructureCertificate& cert) {
  std::ostringstream os;
  os << "structure certificate: " << (cert.passed ? "PASS" : "FAIL") << "\n";
  os << "  window [" << cert.window.xmin << "," << cert.window.xmax << "]x["
     << cert.window.ymin << "," << cert.window.ymax << "], step "
     << cert.grid_step << "\n";
  os << "  disjointness: " << (cert.disjoint ? "ok" : "FAIL") << ", min gap "
     << cert.min_gap << " (closest " << cert.closest_pair << ")\n";
  for (const ConditionReport* c :
       {&cert.complement_connected, &cert.locally_connected_at_inf,
        &cert.bounded_interiors}) {
    os << "  " << c->name << ": " << (c->passed ? "ok" : "FAIL");
    if (!c->witness.empty()) os << " — " << c->witness;
    os << "\n";
  }
  if (std::isfinite(cert.interior_diameter_bound))
    os << "  interior diameter bound " << cert.interior_diameter_bound << "\n";
  else
    os << "  interior diameter unbounded\n";
  return os.str();
}

}  // namespace schedyn

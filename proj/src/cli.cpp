#include "schedyn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "schedyn/analytic.hpp"
#include "schedyn/claims.hpp"
#include "schedyn/dynamics.hpp"
#include "schedyn/geometry.hpp"
#include "schedyn/report.hpp"
#include "schedyn/schedule.hpp"
#include "schedyn/svg.hpp"
#include "schedyn/version.hpp"

namespace schedyn {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitSyntax = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitIo = 4;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The f/g pair a command works on: a built-in id or a schedule file with
// [f]/[g] sections.
struct ResolvedPair {
  std::optional<ScheduleFile> owned;  // set when loaded from a file
  const TransitionSpec* f = nullptr;
  const TransitionSpec* g = nullptr;
  Mode mode = Mode::Linear;
  std::string source;
};

ResolvedPair resolve_pair(const std::string& theorem,
                          const std::string& spec_path) {
  ResolvedPair r;
  if (!theorem.empty()) {
    const BuiltinPair& pair = builtin(theorem);
    r.f = pair.f;
    r.g = pair.g;
    r.mode = pair.mode;
    r.source = pair.id;
  } else {
    r.owned = parse_schedule_text(read_file(spec_path));
    r.mode = r.owned->mode;
    r.f = r.owned->section("f");
    r.g = r.owned->section("g");
    r.source = spec_path;
  }
  return r;
}

std::unique_ptr<ScheduleMap> pick_map(const ResolvedPair& pair,
                                      const std::string& which) {
  auto need = [&](const TransitionSpec* s,
                  const char* name) -> const TransitionSpec& {
    if (!s)
      throw std::out_of_range("'" + pair.source + "' has no [" +
                              std::string(name) + "] section");
    return *s;
  };
  if (which == "f") return need(pair.f, "f").clone();
  if (which == "g") return need(pair.g, "g").clone();
  if (which == "gf")  // g∘f: apply f first
    return compose(need(pair.f, "f"), need(pair.g, "g")).clone();
  if (which == "fg")  // f∘g: apply g first
    return compose(need(pair.g, "g"), need(pair.f, "f")).clone();
  throw std::out_of_range("unknown map '" + which + "'");
}

void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int do_validate(const std::string& path, const std::string& format,
                std::ostream& out, std::ostream& err) {
  const std::string text = read_file(path);
  try {
    const ScheduleFile file = parse_schedule_text(text);
    if (format == "json") {
      Json sections = Json::array();
      for (const TransitionSpec& s : file.sections)
        sections.push_back(Json{{"name", s.name()},
                                {"rules", s.rules().size()},
                                {"max_constant", s.max_constant()}});
      emit_json(out, report_envelope("validate", Json{{"file", path}},
                                     Json{{"valid", true},
                                          {"mode", to_string(file.mode)},
                                          {"sections", std::move(sections)}},
                                     "valid"));
    } else {
      out << path << ": valid (mode " << to_string(file.mode);
      for (const TransitionSpec& s : file.sections)
        out << ", [" << s.name() << "] " << s.rules().size() << " rules";
      out << ")\n";
    }
    return kExitOk;
  } catch (const SpecError& e) {
    if (format == "json") {
      emit_json(out,
                report_envelope("validate", Json{{"file", path}},
                                Json{{"valid", false},
                                     {"error",
                                      Json{{"code", code_name(e.code())},
                                           {"line", e.line()},
                                           {"col", e.col()},
                                           {"witness", e.witness()},
                                           {"message", e.what()}}}},
                                "invalid"));
    }
    err << e.what() << "\n";
    return e.code() == SpecErrorCode::Syntax ? kExitSyntax : kExitSemantic;
  }
}

int do_classify(const std::string& theorem, const std::string& spec_path,
                const std::string& region_text, const std::string& which,
                const std::string& format, std::ostream& out,
                std::ostream& err) {
  const ResolvedPair pair = resolve_pair(theorem, spec_path);
  const std::unique_ptr<ScheduleMap> map = pick_map(pair, which);
  const std::optional<Region> region = parse_region(region_text);
  if (!region) {
    err << "unrecognized region '" << region_text
        << "' (expected BASE, G3, B12 or G(0,2))\n";
    return kExitSyntax;
  }

  const OrbitClass oc = classify(*map, *region);
  Index preview = 0;
  switch (oc.kind) {
    case OrbitKind::Periodic: preview = oc.period; break;
    case OrbitKind::Preperiodic: preview = oc.tail + oc.period; break;
    case OrbitKind::Wandering:
      preview = Index(oc.certificate->transient.size() +
                      2 * oc.certificate->guard_cycle.size());
      break;
  }
  preview = std::min<Index>(std::max<Index>(preview, 1), 24);
  const std::vector<Region> prefix = orbit(*map, *region, preview);

  if (format == "json") {
    Json orbit_json = Json::array();
    for (const Region& r : prefix)
      orbit_json.push_back(region_label(r, pair.mode));
    emit_json(out, report_envelope(
                       "classify",
                       Json{{"source", pair.source},
                            {"region", region_label(*region, pair.mode)},
                            {"map", which}},
                       Json{{"classification", to_json(oc, pair.mode)},
                            {"orbit", std::move(orbit_json)}},
                       region_label(*region, pair.mode) + " under " + which +
                           ": " + oc.describe()));
  } else {
    out << region_label(*region, pair.mode) << " under " << which << " ["
        << pair.source << "]: " << oc.describe() << "\n";
    out << "orbit:";
    for (const Region& r : prefix) out << " " << region_label(r, pair.mode);
    if (oc.kind == OrbitKind::Wandering) out << " ...";
    out << "\n";
  }
  return kExitOk;
}

int do_table(const std::string& theorem, Index max_index,
             const std::string& format, std::ostream& out, std::ostream&) {
  const BuiltinPair& pair = builtin(theorem);
  std::vector<Region> probe;
  if (max_index <= 0) {
    probe = default_probe(pair.mode);
  } else {
    probe.push_back(Region::base());
    if (pair.mode == Mode::Linear) {
      for (Index k = 1; k <= max_index; ++k) {
        probe.push_back(Region::g(k));
        probe.push_back(Region::b(k));
      }
    } else {
      for (Index p = 0; p <= max_index; ++p)
        for (Index q = 1; q <= max_index; ++q) {
          probe.push_back(Region::g_grid(p, q));
          probe.push_back(Region::b_grid(p, q));
        }
    }
  }
  const std::vector<TableRow> rows = classify_table(*pair.f, *pair.g, probe);

  if (format == "json") {
    Json rows_json = Json::array();
    for (const TableRow& row : rows) rows_json.push_back(to_json(row, pair.mode));
    emit_json(out,
              report_envelope("table",
                              Json{{"theorem", pair.id},
                                   {"mode", to_string(pair.mode)},
                                   {"regions", rows.size()}},
                              Json{{"rows", std::move(rows_json)}},
                              "classified " + std::to_string(rows.size()) +
                                  " regions under " + pair.id));
  } else {
    out << "schedule pair " << pair.id << " (" << to_string(pair.mode)
        << " mode), " << rows.size() << " regions\n";
    out << render_table_text(rows, pair.mode);
  }
  return kExitOk;
}

int do_verify(const std::string& theorem, const std::string& format,
              std::ostream& out, std::ostream&) {
  std::vector<std::string> ids;
  if (theorem == "all") {
    ids = builtin_ids();
  } else {
    ids.push_back(builtin(theorem).id);
  }

  std::vector<ClaimReport> reports;
  reports.reserve(ids.size());
  std::size_t assertions = 0, checks = 0, failures = 0;
  for (const std::string& id : ids) {
    reports.push_back(verify_claims(id));
    assertions += reports.back().assertions.size();
    checks += reports.back().checks;
    failures += reports.back().failure_count();
  }
  const bool all_passed = failures == 0;

  if (format == "json") {
    Json reports_json = Json::array();
    for (const ClaimReport& r : reports) reports_json.push_back(to_json(r));
    emit_json(
        out,
        report_envelope(
            "verify", Json{{"theorem", theorem}},
            Json{{"reports", std::move(reports_json)},
                 {"tables", reports.size()},
                 {"assertions", assertions},
                 {"checks", checks},
                 {"failures", failures},
                 {"passed", all_passed}},
            (all_passed ? "all claims hold: " : "CLAIM FAILURES: ") +
                std::to_string(assertions) + " assertions over " +
                std::to_string(checks) + " classifications"));
  } else {
    for (const ClaimReport& r : reports) out << render_claims_text(r);
    out << (all_passed ? "PASS" : "FAIL") << ": " << assertions
        << " assertions, " << checks << " classifications, " << failures
        << " failures\n";
  }
  return all_passed ? kExitOk : kExitCheckFailed;
}

int do_modulus(Index center, std::ostream& out) {
  const LogTarget lt(center);
  const double radius = modulus_radius(lt.magnitude());

  // Independent cross-check: bisect the sampled deviation for the radius
  // where it crosses 1/2.
  const int samples = 2048;
  double lo = 0.0, hi = 0.5;
  while (circle_max_deviation(lt, hi, samples) < 0.5 && hi < 64.0) hi *= 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (circle_max_deviation(lt, mid, samples) < 0.5 ? lo : hi) = mid;
  }
  const double crossing = 0.5 * (lo + hi);
  const double sup = sup_image_deviation(lt.magnitude(), radius);
  const double diff = std::abs(crossing - radius);

  std::ostringstream summary;
  summary << "modulus radius " << radius << " for target " << center
          << ", oracle crossing within " << (diff <= 1e-6 ? "1e-6" : "SLACK");
  emit_json(out,
            report_envelope(
                "modulus", Json{{"center", center}},
                Json{{"center", center},
                     {"magnitude", lt.magnitude()},
                     {"log_point",
                      Json{{"re", lt.log_point().real()},
                           {"im", lt.log_point().imag()}}},
                     {"radius", radius},
                     {"sup_deviation_at_radius", sup},
                     {"oracle",
                      Json{{"crossing", crossing},
                           {"samples", samples},
                           {"abs_diff", diff},
                           {"agrees", diff <= 1e-6}}}},
                summary.str()));
  return kExitOk;
}

int do_check_family(const std::string& fixture, double half_width, double step,
                    const std::string& format, std::ostream& out,
                    std::ostream& err) {
  CarlemanFamily family = CarlemanFamily::standard();
  if (fixture == "standard") {
    family = CarlemanFamily::standard();
  } else if (fixture == "wide-disks") {
    family = CarlemanFamily::with_disk_radius(2.0);
  } else if (fixture == "half-plane") {
    family = CarlemanFamily::half_plane_fixture();
  } else if (fixture == "pocket") {
    family = CarlemanFamily::pocket_fixture();
  } else {
    err << "unknown fixture '" << fixture
        << "' (standard, wide-disks, half-plane, pocket)\n";
    return kExitSyntax;
  }

  const Box window{-half_width, half_width, -half_width, half_width};
  const StructureCertificate cert = verify_structure(family, window, step);

  if (format == "json") {
    emit_json(out, report_envelope(
                       "check-family",
                       Json{{"fixture", fixture},
                            {"window_half_width", half_width},
                            {"step", step}},
                       to_json(cert),
                       cert.passed ? "structure certificate holds"
                                   : "structure certificate FAILED"));
  } else {
    out << render_structure_text(cert);
  }
  return cert.passed ? kExitOk : kExitCheckFailed;
}

int do_diagram(const std::string& theorem, const std::string& out_path,
               double half_width, std::ostream& out, std::ostream& err) {
  const BuiltinPair& pair = builtin(theorem);
  const Box window{-half_width, half_width, -half_width, half_width};
  const std::string svg = render_family_diagram(CarlemanFamily::standard(),
                                                window, pair.f, pair.g);
  if (out_path == "-") {
    out << svg;
    return kExitOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    err << "cannot write '" << out_path << "'\n";
    return kExitIo;
  }
  file << svg;
  file.flush();
  if (!file) {
    err << "cannot write '" << out_path << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"region-orbit schedules: validate, classify, and verify "
               "symbolic dynamics over the Carleman disk family"};
  app.name(kToolName);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "parse and validate a schedule file");
  std::string validate_file;
  std::string validate_format = "text";
  validate_cmd->add_option("file", validate_file, "schedule file")->required();
  add_format_option(validate_cmd, validate_format);

  // classify
  auto* classify_cmd = app.add_subcommand(
      "classify", "classify one region's orbit under f, g, gf or fg");
  std::string classify_theorem, classify_spec, classify_region;
  std::string classify_map = "f";
  std::string classify_format = "text";
  classify_cmd->add_option("--theorem", classify_theorem,
                           "built-in pair id or alias");
  classify_cmd->add_option("--spec", classify_spec,
                           "schedule file with [f]/[g] sections");
  classify_cmd->add_option("--region", classify_region, "region, e.g. B4")
      ->required();
  classify_cmd->add_option("--map", classify_map, "f, g, gf (g∘f) or fg (f∘g)")
      ->check(CLI::IsMember({"f", "g", "gf", "fg"}))
      ->capture_default_str();
  add_format_option(classify_cmd, classify_format);

  // table
  auto* table_cmd = app.add_subcommand(
      "table", "classification table over the probe regions");
  std::string table_theorem;
  Index table_max_index = 0;
  std::string table_format = "text";
  table_cmd->add_option("--theorem", table_theorem, "built-in pair id")
      ->required();
  table_cmd->add_option("--max-index", table_max_index,
                        "probe depth (default 40 linear / 8 grid)");
  add_format_option(table_cmd, table_format);

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "check a built-in pair's behaviour claims");
  std::string verify_theorem;
  std::string verify_format = "text";
  verify_cmd->add_option("--theorem", verify_theorem, "pair id or 'all'")
      ->required();
  add_format_option(verify_cmd, verify_format);

  // modulus
  auto* modulus_cmd = app.add_subcommand(
      "modulus", "perturbation radius for a pinned target (JSON)");
  Index modulus_center = 0;
  modulus_cmd->add_option("--center", modulus_center, "pinned centre, |c| >= 2")
      ->required();

  // check-family
  auto* family_cmd = app.add_subcommand(
      "check-family", "verify the disk family's structure conditions");
  std::string family_fixture = "standard";
  double family_window = 30.0;
  double family_step = 0.1;
  std::string family_format = "text";
  family_cmd->add_option("--fixture", family_fixture,
                         "standard, wide-disks, half-plane or pocket")
      ->capture_default_str();
  family_cmd->add_option("--window", family_window, "half-width of the window")
      ->capture_default_str();
  family_cmd->add_option("--step", family_step, "grid step")
      ->capture_default_str();
  add_format_option(family_cmd, family_format);

  // diagram
  auto* diagram_cmd =
      app.add_subcommand("diagram", "SVG sketch of the family with rule arrows");
  std::string diagram_theorem, diagram_out;
  double diagram_window = 30.0;
  diagram_cmd->add_option("--theorem", diagram_theorem, "built-in pair id")
      ->required();
  diagram_cmd->add_option("--out", diagram_out, "output file, or - for stdout")
      ->required();
  diagram_cmd->add_option("--window", diagram_window, "half-width of the window")
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back(kToolName);
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitSyntax;
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitSyntax;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitSyntax;
  }

  try {
    if (validate_cmd->parsed())
      return do_validate(validate_file, validate_format, out, err);
    if (classify_cmd->parsed()) {
      if (classify_theorem.empty() == classify_spec.empty()) {
        err << "classify needs exactly one of --theorem or --spec\n";
        return kExitSyntax;
      }
      return do_classify(classify_theorem, classify_spec, classify_region,
                         classify_map, classify_format, out, err);
    }
    if (table_cmd->parsed())
      return do_table(table_theorem, table_max_index, table_format, out, err);
    if (verify_cmd->parsed())
      return do_verify(verify_theorem, verify_format, out, err);
    if (modulus_cmd->parsed()) return do_modulus(modulus_center, out);
    if (family_cmd->parsed())
      return do_check_family(family_fixture, family_window, family_step,
                             family_format, out, err);
    if (diagram_cmd->parsed())
      return do_diagram(diagram_theorem, diagram_out, diagram_window, out, err);
    err << "no command given\n";
    return kExitSyntax;
  } catch (const SpecError& e) {
    err << e.what() << "\n";
    return e.code() == SpecErrorCode::Syntax ? kExitSyntax : kExitSemantic;
  } catch (const IoFailure& e) {
    err << e.what() << "\n";
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    err << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    // out_of_range (unknown ids), domain_error (invalid indices/windows),
    // invalid_argument, overflow_error
    err << e.what() << "\n";
    return kExitSemantic;
  }
}

}  // namespace schedyn

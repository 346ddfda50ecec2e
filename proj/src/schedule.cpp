#include "schedyn/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "schedyn/lattice.hpp"

namespace schedyn {

RegionKind to_region_kind(Family f) {
  switch (f) {
    case Family::Base: return RegionKind::Base;
    case Family::G: return RegionKind::GDisk;
    case Family::B: return RegionKind::BDisk;
  }
  throw std::logic_error("to_region_kind: bad family");
}

Family family_of(const Region& r) {
  switch (r.kind) {
    case RegionKind::Base: return Family::Base;
    case RegionKind::GDisk: return Family::G;
    case RegionKind::BDisk: return Family::B;
    case RegionKind::LineL:
    case RegionKind::LineM:
      throw std::domain_error("family_of: lines carry no schedule family");
  }
  throw std::logic_error("family_of: bad region kind");
}

std::string to_string(Mode m) { return m == Mode::Linear ? "linear" : "grid"; }

std::string to_string(Family f) {
  switch (f) {
    case Family::Base: return "BASE";
    case Family::G: return "G";
    case Family::B: return "B";
  }
  return "?";
}

const char* code_name(SpecErrorCode code) {
  switch (code) {
    case SpecErrorCode::Syntax: return "E_SYNTAX";
    case SpecErrorCode::Overlap: return "E_OVERLAP";
    case SpecErrorCode::Gap: return "E_GAP";
    case SpecErrorCode::Domain: return "E_DOMAIN";
    case SpecErrorCode::Unsupported: return "E_UNSUPPORTED";
    case SpecErrorCode::ModeMismatch: return "E_MODE_MISMATCH";
  }
  return "E_UNKNOWN";
}

namespace {

std::string format_spec_error(SpecErrorCode code, const std::string& message,
                              int line, int col, const std::string& witness) {
  std::ostringstream os;
  os << code_name(code);
  if (line > 0) {
    os << " at line " << line;
    if (col > 0) os << ", col " << col;
  }
  os << ": " << message;
  if (!witness.empty()) os << " (witness: " << witness << ")";
  return os.str();
}

}  // namespace

SpecError::SpecError(SpecErrorCode code, const std::string& message, int line,
                     int col, std::string witness)
    : std::runtime_error(format_spec_error(code, message, line, col, witness)),
      code_(code),
      line_(line),
      col_(col),
      witness_(std::move(witness)) {}

// ---------------------------------------------------------------------------
// Rule pieces

bool SlotPattern::matches(Index v) const {
  switch (kind) {
    case Kind::Exact: return v == value;
    case Kind::Guard: return v >= value;
    case Kind::Free: return true;
  }
  return false;
}

Index SlotPattern::min_value(Index domain_min) const {
  switch (kind) {
    case Kind::Exact: return value;
    case Kind::Guard: return value;
    case Kind::Free: return domain_min;
  }
  return domain_min;
}

std::string SlotPattern::render() const {
  switch (kind) {
    case Kind::Exact: return std::to_string(value);
    case Kind::Guard: return var + ">=" + std::to_string(value);
    case Kind::Free: return var;
  }
  return "?";
}

bool Pattern::matches(Family fam, const std::vector<Index>& values) const {
  if (family != fam || slots.size() != values.size()) return false;
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (!slots[i].matches(values[i])) return false;
  return true;
}

std::string Pattern::render() const {
  if (family == Family::Base) return "BASE";
  std::string out = to_string(family) + "[";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i) out += ",";
    out += slots[i].render();
  }
  return out + "]";
}

std::string SlotExpr::render() const {
  if (absolute) return std::to_string(value);
  if (value == 0) return var;
  if (value > 0) return var + "+" + std::to_string(value);
  return var + "-" + std::to_string(-value);
}

std::string RuleTarget::render() const {
  if (family == Family::Base) return "BASE";
  std::string out = to_string(family) + "[";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i) out += ",";
    out += slots[i].render();
  }
  return out + "]";
}

std::string Rule::render() const {
  return lhs.render() + " -> " + rhs.render();
}

// ---------------------------------------------------------------------------
// Regions <-> slot values

Index slot_domain_min(Mode mode, std::size_t slot) {
  if (mode == Mode::Linear) return 1;  // k >= 1
  return slot == 0 ? 0 : 1;            // p >= 0, q >= 1
}

std::vector<Index> region_slots(const Region& r, Mode mode) {
  if (r.is_base()) return {};
  if (r.is_line())
    throw std::invalid_argument("region_slots: lines are not schedulable");
  if (mode == Mode::Linear) return {r.index};
  GridIndex g = r.grid();
  return {g.row, g.col};
}

Region region_from_slots(Family fam, Mode mode,
                         const std::vector<Index>& values) {
  if (fam == Family::Base) return Region::base();
  if (mode == Mode::Linear) {
    if (values.size() != 1)
      throw std::logic_error("region_from_slots: linear mode takes one index");
    return fam == Family::G ? Region::g(values[0]) : Region::b(values[0]);
  }
  if (values.size() != 2)
    throw std::logic_error("region_from_slots: grid mode takes two indices");
  return fam == Family::G ? Region::g_grid(values[0], values[1])
                          : Region::b_grid(values[0], values[1]);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Scanner {
  std::string_view s;
  int line = 0;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  int col() {
    skip_ws();
    return static_cast<int>(pos) + 1;
  }
  bool consume(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool consume_str(std::string_view t) {
    skip_ws();
    if (s.substr(pos, t.size()) == t) {
      pos += t.size();
      return true;
    }
    return false;
  }
  std::optional<Index> integer() {
    skip_ws();
    std::size_t p = pos;
    bool neg = false;
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) {
      neg = s[p] == '-';
      ++p;
    }
    std::size_t d0 = p;
    Index v = 0;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
      if (v > 922337203685477580LL)
        throw SpecError(SpecErrorCode::Syntax, "integer literal too large",
                        line, static_cast<int>(pos) + 1);
      v = v * 10 + (s[p] - '0');
      ++p;
    }
    if (p == d0) return std::nullopt;
    pos = p;
    return neg ? -v : v;
  }
  std::optional<std::string> ident() {
    skip_ws();
    std::size_t p = pos;
    auto head = [&](char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    };
    auto tail = [&](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    if (p >= s.size() || !head(s[p])) return std::nullopt;
    ++p;
    while (p < s.size() && tail(s[p])) ++p;
    std::string out{s.substr(pos, p - pos)};
    pos = p;
    return out;
  }
  [[noreturn]] void fail(const std::string& message) {
    throw SpecError(SpecErrorCode::Syntax, message, line, col());
  }
};

}  // namespace

class SpecParser {
 public:
  ScheduleFile parse(std::string_view text) {
    ScheduleFile file;
    bool mode_seen = false;
    TransitionSpec* open = nullptr;
    std::set<std::string> names;

    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      std::string_view raw = text.substr(
          start, end == std::string_view::npos ? std::string_view::npos
                                               : end - start);
      ++lineno;

      std::string_view body = raw.substr(0, raw.find('#'));
      Scanner sc{body, lineno};

      if (!sc.eof()) {
        if (!mode_seen) {
          parse_mode_line(sc, file);
          mode_seen = true;
        } else if (sc.consume('[')) {
          auto name = sc.ident();
          if (!name) sc.fail("expected a section name");
          if (!sc.consume(']')) sc.fail("expected ']'");
          if (!sc.eof()) sc.fail("unexpected text after section header");
          if (!names.insert(*name).second)
            sc.fail("duplicate section [" + *name + "]");
          file.sections.emplace_back();
          open = &file.sections.back();
          open->mode_ = file.mode;
          open->name_ = *name;
        } else {
          if (!open) sc.fail("rule before any [section] header");
          open->rules_.push_back(parse_rule(sc, file.mode));
        }
      }

      if (end == std::string_view::npos) break;
      start = end + 1;
    }

    if (!mode_seen)
      throw SpecError(SpecErrorCode::Syntax,
                      "expected 'mode = linear' or 'mode = grid'", 1, 1);
    if (file.sections.empty())
      throw SpecError(SpecErrorCode::Syntax, "no [section] headers found",
                      lineno, 1);
    for (TransitionSpec& spec : file.sections) validate(spec);
    return file;
  }

 private:
  static void parse_mode_line(Scanner& sc, ScheduleFile& file) {
    auto kw = sc.ident();
    if (!kw || *kw != "mode") sc.fail("expected 'mode = linear|grid' first");
    if (!sc.consume('=')) sc.fail("expected '=' after 'mode'");
    auto value = sc.ident();
    if (!value) sc.fail("expected 'linear' or 'grid'");
    if (*value == "linear") file.mode = Mode::Linear;
    else if (*value == "grid") file.mode = Mode::Grid;
    else sc.fail("mode must be 'linear' or 'grid', got '" + *value + "'");
    if (!sc.eof()) sc.fail("unexpected text after mode");
  }

  static Family parse_family(Scanner& sc, const std::string& word) {
    if (word == "G") return Family::G;
    if (word == "B") return Family::B;
    sc.fail("expected BASE, G[...] or B[...], got '" + word + "'");
  }

  static Rule parse_rule(Scanner& sc, Mode mode) {
    Rule rule;
    rule.line = sc.line;

    auto head = sc.ident();
    if (!head) sc.fail("expected a rule");
    if (*head == "BASE") {
      rule.lhs.family = Family::Base;
    } else {
      rule.lhs.family = parse_family(sc, *head);
      if (!sc.consume('[')) sc.fail("expected '[' after the family name");
      do {
        rule.lhs.slots.push_back(parse_slot_pattern(sc));
      } while (sc.consume(','));
      if (!sc.consume(']')) sc.fail("expected ']'");
    }

    if (!sc.consume_str("->")) sc.fail("expected '->'");

    auto thead = sc.ident();
    if (thead && *thead == "BASE") {
      rule.rhs.family = Family::Base;
    } else {
      if (!thead) sc.fail("expected a target");
      rule.rhs.family = parse_family(sc, *thead);
      if (!sc.consume('[')) sc.fail("expected '[' after the family name");
      do {
        rule.rhs.slots.push_back(parse_slot_expr(sc));
      } while (sc.consume(','));
      if (!sc.consume(']')) sc.fail("expected ']'");
    }
    if (!sc.eof()) sc.fail("unexpected text after the rule");

    check_rule_shape(sc, rule, mode);
    return rule;
  }

  static SlotPattern parse_slot_pattern(Scanner& sc) {
    SlotPattern slot;
    if (auto v = sc.integer()) {
      slot.kind = SlotPattern::Kind::Exact;
      slot.value = *v;
      return slot;
    }
    auto name = sc.ident();
    if (!name) sc.fail("expected an index or a variable");
    slot.var = *name;
    if (sc.consume_str(">=")) {
      auto bound = sc.integer();
      if (!bound) sc.fail("expected a bound after '>='");
      slot.kind = SlotPattern::Kind::Guard;
      slot.value = *bound;
    } else {
      slot.kind = SlotPattern::Kind::Free;
    }
    return slot;
  }

  static SlotExpr parse_slot_expr(Scanner& sc) {
    SlotExpr expr;
    if (auto v = sc.integer()) {
      expr.absolute = true;
      expr.value = *v;
      return expr;
    }
    auto name = sc.ident();
    if (!name) sc.fail("expected an index or a variable");
    expr.absolute = false;
    expr.var = *name;
    expr.value = 0;
    if (sc.consume('+')) {
      auto off = sc.integer();
      if (!off) sc.fail("expected an offset after '+'");
      expr.value = *off;
    } else if (sc.consume('-')) {
      auto off = sc.integer();
      if (!off) sc.fail("expected an offset after '-'");
      expr.value = -*off;
    }
    return expr;
  }

  // Shape checks that do not need the whole section: slot counts per mode and
  // variable binding discipline.
  static void check_rule_shape(Scanner& sc, const Rule& rule, Mode mode) {
    const std::size_t expected = mode == Mode::Linear ? 1 : 2;
    if (rule.lhs.family != Family::Base && rule.lhs.slots.size() != expected)
      sc.fail(to_string(mode) + " mode patterns take " +
              std::to_string(expected) + " index slot(s)");
    if (rule.rhs.family != Family::Base && rule.rhs.slots.size() != expected)
      sc.fail(to_string(mode) + " mode targets take " +
              std::to_string(expected) + " index slot(s)");

    std::set<std::string> bound;
    for (const SlotPattern& slot : rule.lhs.slots) {
      if (slot.kind == SlotPattern::Kind::Exact) continue;
      if (!bound.insert(slot.var).second)
        throw SpecError(SpecErrorCode::Unsupported,
                        "pattern variable '" + slot.var +
                            "' is bound twice; equality constraints are "
                            "outside the analysable fragment",
                        rule.line, 0, rule.render());
    }
    for (std::size_t i = 0; i < rule.rhs.slots.size(); ++i) {
      const SlotExpr& expr = rule.rhs.slots[i];
      if (expr.absolute) continue;
      const bool same_slot_var =
          rule.lhs.family != Family::Base && i < rule.lhs.slots.size() &&
          rule.lhs.slots[i].kind != SlotPattern::Kind::Exact &&
          rule.lhs.slots[i].var == expr.var;
      if (!same_slot_var)
        throw SpecError(
            SpecErrorCode::Unsupported,
            "target slot " + std::to_string(i + 1) + " must be an integer or " +
                "the variable bound by the same pattern slot (escape analysis " +
                "needs per-slot affine targets)",
            rule.line, 0, rule.render());
    }
  }

  static void validate(TransitionSpec& spec) {
    const Mode mode = spec.mode_;
    const std::size_t nslots = mode == Mode::Linear ? 1 : 2;

    // Cap on any constant a spec may mention, so candidate-point arithmetic
    // below (+-1, +2, minimum + offset) stays far from Index overflow.
    constexpr Index kMaxSpecConstant = Index(1) << 60;

    // domain discipline + purity + the largest constant
    Index max_c = 1;
    for (Rule& rule : spec.rules_) {
      for (std::size_t i = 0; i < rule.lhs.slots.size(); ++i) {
        const SlotPattern& slot = rule.lhs.slots[i];
        if (slot.kind != SlotPattern::Kind::Free) {
          if (slot.value < slot_domain_min(mode, i))
            throw SpecError(SpecErrorCode::Domain,
                            "pattern index below the slot domain", rule.line, 0,
                            rule.lhs.render());
          if (slot.value > kMaxSpecConstant)
            throw SpecError(SpecErrorCode::Domain,
                            "pattern index constant too large", rule.line, 0,
                            rule.lhs.render());
          max_c = std::max(max_c, slot.value);
        }
      }
      for (std::size_t i = 0; i < rule.rhs.slots.size(); ++i) {
        const SlotExpr& expr = rule.rhs.slots[i];
        const Index dom = slot_domain_min(mode, i);
        if (std::abs(expr.value) > kMaxSpecConstant)
          throw SpecError(SpecErrorCode::Domain,
                          "target index constant too large", rule.line, 0,
                          rule.render());
        if (expr.absolute) {
          if (expr.value < dom)
            throw SpecError(SpecErrorCode::Domain,
                            "target index below the slot domain", rule.line, 0,
                            rule.render());
          max_c = std::max(max_c, expr.value);
        } else {
          // smallest value the bound variable can take under this pattern
          Index lo = rule.lhs.slots[i].min_value(dom);
          if (lo + expr.value < dom) {
            std::vector<Index> src, dst;
            for (std::size_t j = 0; j < nslots; ++j)
              src.push_back(rule.lhs.slots[j].min_value(slot_domain_min(mode, j)));
            for (std::size_t j = 0; j < nslots; ++j)
              dst.push_back(rule.rhs.slots[j].absolute
                                ? rule.rhs.slots[j].value
                                : src[j] + rule.rhs.slots[j].value);
            throw SpecError(SpecErrorCode::Domain,
                            "target index can leave its domain", rule.line, 0,
                            render_point(rule.lhs.family, src) + " -> " +
                                render_point(rule.rhs.family, dst));
          }
          max_c = std::max(max_c, std::abs(expr.value));
        }
      }
      rule.pure_guard = !rule.lhs.slots.empty();
      for (const SlotPattern& slot : rule.lhs.slots)
        if (slot.kind == SlotPattern::Kind::Exact) rule.pure_guard = false;
      for (const SlotExpr& expr : rule.rhs.slots)
        if (expr.absolute) rule.pure_guard = false;
      if (rule.rhs.family == Family::Base && !rule.lhs.slots.empty())
        rule.pure_guard = false;
    }
    spec.max_constant_ = max_c;

    // BASE coverage
    {
      std::vector<int> base_lines;
      for (const Rule& rule : spec.rules_)
        if (rule.lhs.family == Family::Base) base_lines.push_back(rule.line);
      if (base_lines.empty())
        throw SpecError(SpecErrorCode::Gap,
                        "section [" + spec.name_ + "] never maps BASE", 0, 0,
                        "BASE");
      if (base_lines.size() > 1)
        throw SpecError(SpecErrorCode::Overlap,
                        "rules at lines " + std::to_string(base_lines[0]) +
                            " and " + std::to_string(base_lines[1]) +
                            " both match BASE",
                        base_lines[1], 0, "BASE");
    }

    // Family totality and determinism. Slot-pattern matching is piecewise
    // constant in each index with breakpoints only at pattern constants, so
    // checking every constant +-1 (plus the domain edge and a value beyond
    // all constants) decides both properties for the whole infinite domain.
    for (Family fam : {Family::G, Family::B}) {
      std::vector<const Rule*> rules;
      for (const Rule& rule : spec.rules_)
        if (rule.lhs.family == fam) rules.push_back(&rule);

      std::vector<std::vector<Index>> cand(nslots);
      for (std::size_t i = 0; i < nslots; ++i) {
        const Index dom = slot_domain_min(mode, i);
        std::set<Index> vals{dom, dom + 1};
        Index top = dom;
        for (const Rule* rule : rules) {
          const SlotPattern& slot = rule->lhs.slots[i];
          if (slot.kind == SlotPattern::Kind::Free) continue;
          for (Index d : {-1, 0, 1}) vals.insert(slot.value + d);
          top = std::max(top, slot.value);
        }
        vals.insert(top + 2);
        for (Index v : vals)
          if (v >= dom) cand[i].push_back(v);
        std::sort(cand[i].begin(), cand[i].end());
      }

      std::vector<Index> point(nslots);
      check_family_points(spec, fam, rules, cand, point, 0);
    }
  }

  static std::string render_point(Family fam, const std::vector<Index>& point) {
    if (fam == Family::Base) return "BASE";
    std::string out = to_string(fam) + "[";
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(point[i]);
    }
    return out + "]";
  }

  static void check_family_points(const TransitionSpec& spec, Family fam,
                                  const std::vector<const Rule*>& rules,
                                  const std::vector<std::vector<Index>>& cand,
                                  std::vector<Index>& point, std::size_t pos) {
    if (pos < point.size()) {
      for (Index v : cand[pos]) {
        point[pos] = v;
        check_family_points(spec, fam, rules, cand, point, pos + 1);
      }
      return;
    }
    std::vector<const Rule*> hits;
    for (const Rule* rule : rules)
      if (rule->lhs.matches(fam, point)) hits.push_back(rule);
    if (hits.empty())
      throw SpecError(SpecErrorCode::Gap,
                      "section [" + spec.name_ + "] leaves family " +
                          to_string(fam) + " uncovered",
                      0, 0, render_point(fam, point));
    if (hits.size() > 1)
      throw SpecError(SpecErrorCode::Overlap,
                      "rules at lines " + std::to_string(hits[0]->line) +
                          " and " + std::to_string(hits[1]->line) +
                          " both match",
                      hits[1]->line, 0, render_point(fam, point));
  }
};

ScheduleFile parse_schedule_text(std::string_view text) {
  return SpecParser{}.parse(text);
}

TransitionSpec parse_spec(std::string_view text) {
  ScheduleFile file = parse_schedule_text(text);
  if (file.sections.size() != 1)
    throw SpecError(SpecErrorCode::Syntax,
                    "expected exactly one section, found " +
                        std::to_string(file.sections.size()),
                    0, 0);
  return file.sections.front();
}

const TransitionSpec* ScheduleFile::section(std::string_view name) const {
  for (const TransitionSpec& spec : sections)
    if (spec.name() == name) return &spec;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Applying specs

namespace {

Index checked_add(Index a, Index b) {
  Index out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw std::overflow_error("schedule: orbit index overflows");
  return out;
}

}  // namespace

const Rule& TransitionSpec::rule_for(const Region& r) const {
  const Family fam = family_of(r);
  const std::vector<Index> values = region_slots(r, mode_);
  for (const Rule& rule : rules_)
    if (rule.lhs.matches(fam, values)) return rule;
  throw std::logic_error("rule_for: no rule matches " + to_string(r) +
                         " (validation should have rejected this spec)");
}

Region TransitionSpec::apply(const Region& r,
                             std::vector<const Rule*>* hops) const {
  const Rule& rule = rule_for(r);
  if (hops) hops->push_back(&rule);
  if (rule.rhs.family == Family::Base) return Region::base();

  const std::vector<Index> values = region_slots(r, mode_);
  std::vector<Index> out;
  out.reserve(rule.rhs.slots.size());
  for (std::size_t i = 0; i < rule.rhs.slots.size(); ++i) {
    const SlotExpr& expr = rule.rhs.slots[i];
    out.push_back(expr.absolute ? expr.value
                                : checked_add(values[i], expr.value));
  }
  return region_from_slots(rule.rhs.family, mode_, out);
}

std::unique_ptr<ScheduleMap> TransitionSpec::clone() const {
  return std::make_unique<TransitionSpec>(*this);
}

// ---------------------------------------------------------------------------
// Composition

ComposedMap::ComposedMap(const ScheduleMap& first, const ScheduleMap& second)
    : first_(first.clone()), second_(second.clone()) {
  if (first.mode() != second.mode())
    throw SpecError(SpecErrorCode::ModeMismatch,
                    "cannot compose a " + to_string(first.mode()) +
                        "-mode spec with a " + to_string(second.mode()) +
                        "-mode spec");
}

ComposedMap::ComposedMap(const ComposedMap& other)
    : first_(other.first_->clone()), second_(other.second_->clone()) {}

ComposedMap& ComposedMap::operator=(const ComposedMap& other) {
  if (this != &other) {
    first_ = other.first_->clone();
    second_ = other.second_->clone();
  }
  return *this;
}

Mode ComposedMap::mode() const { return first_->mode(); }

std::string ComposedMap::name() const {
  // `first` runs first, so the composite reads second∘first
  return second_->name() + "∘" + first_->name();
}

Index ComposedMap::max_constant() const {
  return std::max(first_->max_constant(), second_->max_constant());
}

Region ComposedMap::apply(const Region& r,
                          std::vector<const Rule*>* hops) const {
  return second_->apply(first_->apply(r, hops), hops);
}

std::unique_ptr<ScheduleMap> ComposedMap::clone() const {
  return std::make_unique<ComposedMap>(*this);
}

ComposedMap compose(const ScheduleMap& first, const ScheduleMap& second) {
  return ComposedMap(first, second);
}

}  // namespace schedyn

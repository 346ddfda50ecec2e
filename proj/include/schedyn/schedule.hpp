#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "schedyn/region.hpp"
#include "schedyn/types.hpp"

namespace schedyn {

// How rules address disks: one linear index G[k], or an array cell G[p,q].
enum class Mode { Linear, Grid };

// Rule-level family symbol. Lines never appear in schedules: the BASE symbol
// already lumps the base disk with every vertical line.
enum class Family { Base, G, B };

RegionKind to_region_kind(Family f);
Family family_of(const Region& r);  // throws std::domain_error for lines
std::string to_string(Mode m);
std::string to_string(Family f);

// ---------------------------------------------------------------------------
// Diagnostics

enum class SpecErrorCode {
  Syntax,       // malformed text
  Overlap,      // two rules match the same region
  Gap,          // some region matches no rule
  Domain,       // an index leaves its domain
  Unsupported,  // grammar-valid but outside the analysable fragment
  ModeMismatch  // composing specs with different modes
};

const char* code_name(SpecErrorCode code);  // "E_SYNTAX", ...

class SpecError : public std::runtime_error {
 public:
  SpecError(SpecErrorCode code, const std::string& message, int line = 0,
            int col = 0, std::string witness = "");

  SpecErrorCode code() const { return code_; }
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& witness() const { return witness_; }

 private:
  SpecErrorCode code_;
  int line_;
  int col_;
  std::string witness_;
};

// ---------------------------------------------------------------------------
// Rules

struct SlotPattern {
  enum class Kind { Exact, Guard, Free };
  Kind kind = Kind::Free;
  Index value = 0;  // Exact value, or Guard lower bound
  std::string var;  // Guard/Free variable name

  bool matches(Index v) const;
  Index min_value(Index domain_min) const;
  std::string render() const;
};

struct Pattern {
  Family family = Family::Base;
  std::vector<SlotPattern> slots;  // empty for BASE; 1 linear; 2 grid

  bool matches(Family fam, const std::vector<Index>& values) const;
  std::string render() const;  // "BASE", "G[k>=3]", "B[0,q]"
};

struct SlotExpr {
  bool absolute = true;
  Index value = 0;  // absolute index, or offset added to the bound variable
  std::string var;  // empty when absolute

  std::string render() const;
};

struct RuleTarget {
  Family family = Family::Base;
  std::vector<SlotExpr> slots;

  std::string render() const;
};

struct Rule {
  Pattern lhs;
  RuleTarget rhs;
  int line = 0;
  // True when every pattern slot is a guard/free variable and every target
  // slot shifts that variable: the step commutes with index translation,
  // which is what the escape analysis leans on.
  bool pure_guard = false;

  std::string render() const;  // "G[k>=3] -> G[k+1]"
};

// ---------------------------------------------------------------------------
// Specs and compositions

// Interface orbits run against: a parsed spec, or a composition of them.
class ScheduleMap {
 public:
  virtual ~ScheduleMap() = default;
  virtual Mode mode() const = 0;
  virtual std::string name() const = 0;
  // Largest absolute constant in patterns and targets (union for
  // compositions); orbits past this index behave uniformly.
  virtual Index max_constant() const = 0;
  // One symbolic step. `hops`, when given, receives every rule fired (a
  // composition fires one per stage).
  virtual Region apply(const Region& r,
                       std::vector<const Rule*>* hops = nullptr) const = 0;
  virtual std::unique_ptr<ScheduleMap> clone() const = 0;
};

// Slot values a region exposes to rule matching under a mode: {}, {k}, {p,q}.
std::vector<Index> region_slots(const Region& r, Mode mode);
Region region_from_slots(Family fam, Mode mode, const std::vector<Index>& values);
// Smallest admissible value per slot position: k >= 1; p >= 0, q >= 1.
Index slot_domain_min(Mode mode, std::size_t slot);

class TransitionSpec final : public ScheduleMap {
 public:
  Mode mode() const override { return mode_; }
  std::string name() const override { return name_; }
  Index max_constant() const override { return max_constant_; }
  Region apply(const Region& r,
               std::vector<const Rule*>* hops = nullptr) const override;
  std::unique_ptr<ScheduleMap> clone() const override;

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule_for(const Region& r) const;  // unique match (validated)

 private:
  friend class SpecParser;
  Mode mode_ = Mode::Linear;
  std::string name_;
  std::vector<Rule> rules_;
  Index max_constant_ = 0;
};

struct ScheduleFile {
  Mode mode = Mode::Linear;
  std::vector<TransitionSpec> sections;

  const TransitionSpec* section(std::string_view name) const;
};

// Parse and validate (totality, determinism, domain safety). Throws SpecError
// with a line/column and, for semantic failures, a concrete witness region.
ScheduleFile parse_schedule_text(std::string_view text);

// Single-section convenience; throws SpecError if the text has more sections.
TransitionSpec parse_spec(std::string_view text);

class ComposedMap final : public ScheduleMap {
 public:
  ComposedMap(const ScheduleMap& first, const ScheduleMap& second);
  ComposedMap(const ComposedMap& other);
  ComposedMap& operator=(const ComposedMap& other);

  Mode mode() const override;
  std::string name() const override;
  Index max_constant() const override;
  Region apply(const Region& r,
               std::vector<const Rule*>* hops = nullptr) const override;
  std::unique_ptr<ScheduleMap> clone() const override;

 private:
  std::unique_ptr<ScheduleMap> first_, second_;
};

// Applies `first`, then `second` — i.e. the composite (second ∘ first).
// Throws SpecError{ModeMismatch} when the modes differ.
ComposedMap compose(const ScheduleMap& first, const ScheduleMap& second);

// ---------------------------------------------------------------------------
// Built-in schedule pairs

struct BuiltinPair {
  std::string id;  // catalog id: "2.1", ..., "2.15"
  Mode mode = Mode::Linear;
  const TransitionSpec* f = nullptr;
  const TransitionSpec* g = nullptr;
};

// Look a pair up by id or alias; throws std::out_of_range for unknown names.
const BuiltinPair& builtin(std::string_view id_or_alias);
std::vector<std::string> builtin_ids();
std::optional<std::string> resolve_alias(std::string_view alias);

// The constant each built-in rule pins, stated independently of the rule's
// target region (transcribed from the displayed inequalities). Used to
// cross-check that target regions and pinned constants agree.
Index builtin_pinned_constant(std::string_view id, std::string_view section,
                              std::size_t rule_index, const Region& source);

}  // namespace schedyn

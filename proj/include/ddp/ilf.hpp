#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ddp/base.hpp"

namespace ddp {

// Atoms of the initial logical form. The concrete syntax is a line of
// parenthesized prefix notation:
//
//   utterance := '(' MOOD [TENSE] atom+ ')'
//   MOOD  := 'decl' | 'interrog' | 'imper'
//   TENSE := '(past' atom+ ')' | '(pres' atom+ ')'
//   atom  := '(ev' VAR PRED ')' | '(role' THETA GF VAR VAR ')'
//          | '(pro' VAR GENDER NUM ')' | '(name' VAR STRING ')'
//          | '(def' VAR ')' | '(indef' NUM VAR ')'
//          | '(noun' VAR PRED ')' | '(nn' VAR PRED ')'
//          | '(adv' VAR ('too'|'back') ')' | '(feat' VAR GENDER NUM ')'
//
// GF := subj|obj|obj2|other, GENDER := male|female|neuter, NUM := sg|pl.
// The feat atom annotates gender/number on non-pronominal nominals;
// pronoun features live on the pro atom itself.

struct EventAtom {
  std::string var;
  std::string pred;
  bool operator==(const EventAtom&) const = default;
};

struct RoleAtom {
  std::string theta;  // thematic label: agent, theme, goal, ...
  GrammaticalFunction gf;
  std::string event_var;
  std::string entity_var;
  bool operator==(const RoleAtom&) const = default;
};

struct ProAtom {
  std::string var;
  Gender gender;
  Number number;
  bool operator==(const ProAtom&) const = default;
};

struct NameAtom {
  std::string var;
  std::string name;
  bool operator==(const NameAtom&) const = default;
};

struct DefAtom {
  std::string var;
  bool operator==(const DefAtom&) const = default;
};

struct IndefAtom {
  Number number;
  std::string var;
  bool operator==(const IndefAtom&) const = default;
};

struct NounAtom {
  std::string var;
  std::string pred;
  bool operator==(const NounAtom&) const = default;
};

// Underspecified noun-noun relation; carried through unresolved.
struct NnAtom {
  std::string var;
  std::string pred;
  bool operator==(const NnAtom&) const = default;
};

struct AdvAtom {
  std::string event_var;
  AdverbTrigger trigger;
  bool operator==(const AdvAtom&) const = default;
};

struct FeatAtom {
  std::string var;
  Gender gender;
  Number number;
  bool operator==(const FeatAtom&) const = default;
};

using Atom = std::variant<EventAtom, RoleAtom, ProAtom, NameAtom, DefAtom,
                          IndefAtom, NounAtom, NnAtom, AdvAtom, FeatAtom>;

// Surface-structure annotations per nominal variable, derived from the
// atom list at parse time.
struct NominalSurface {
  GrammaticalFunction gf = GrammaticalFunction::Other;
  ExpressionType expression = ExpressionType::Name;
  int position = 0;  // 1-based order of first mention
  int clause_depth = 0;
  bool operator==(const NominalSurface&) const = default;
};

struct SurfaceInfo {
  std::map<std::string, NominalSurface> nominals;
  std::vector<std::string> order;  // nominal variables by position
  bool operator==(const SurfaceInfo&) const = default;
};

struct Ilf {
  Mood mood = Mood::Decl;
  std::optional<Tense> tense;
  std::vector<Atom> atoms;
  SurfaceInfo surface;

  std::vector<const ProAtom*> pronouns() const;  // in position order
  std::vector<const EventAtom*> events() const;
  std::vector<const AdvAtom*> adverbs() const;
  const NounAtom* noun_of(const std::string& var) const;
  const NameAtom* name_of(const std::string& var) const;

  // Structural equality; surface is derived and excluded.
  bool operator==(const Ilf& other) const {
    return mood == other.mood && tense == other.tense && atoms == other.atoms;
  }
};

Ilf parse_ilf(std::string_view text);
std::string print_ilf(const Ilf& ilf);

// One utterance s-expression per line; lines beginning ';' are comments.
std::vector<Ilf> parse_discourse(std::string_view text);
std::vector<Ilf> load_discourse_file(const std::string& path);

}  // namespace ddp

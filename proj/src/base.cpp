#include "ddp/base.hpp"

namespace ddp {

int gf_rank(GrammaticalFunction gf) {
  switch (gf) {
    case GrammaticalFunction::Subject: return 0;
    case GrammaticalFunction::Object: return 1;
    case GrammaticalFunction::Object2: return 2;
    case GrammaticalFunction::Other: return 3;
  }
  return 3;
}

int exp_rank(ExpressionType et) {
  switch (et) {
    case ExpressionType::Zero: return 0;
    case ExpressionType::Pronoun: return 1;
    case ExpressionType::DefiniteNp: return 2;
    case ExpressionType::Name: return 2;
    case ExpressionType::IndefiniteNp: return 3;
  }
  return 3;
}

bool is_pronominal(ExpressionType et) {
  return et == ExpressionType::Zero || et == ExpressionType::Pronoun;
}

std::string to_string(Mood m) {
  switch (m) {
    case Mood::Decl: return "decl";
    case Mood::Interrog: return "interrog";
    case Mood::Imper: return "imper";
  }
  return "decl";
}

std::string to_string(Tense t) {
  return t == Tense::Past ? "past" : "pres";
}

std::string to_string(Gender g) {
  switch (g) {
    case Gender::Male: return "male";
    case Gender::Female: return "female";
    case Gender::Neuter: return "neuter";
  }
  return "neuter";
}

std::string to_string(Number n) { return n == Number::Sg ? "sg" : "pl"; }

std::string to_string(GrammaticalFunction gf) {
  switch (gf) {
    case GrammaticalFunction::Subject: return "subj";
    case GrammaticalFunction::Object: return "obj";
    case GrammaticalFunction::Object2: return "obj2";
    case GrammaticalFunction::Other: return "other";
  }
  return "other";
}

std::string to_string(ExpressionType et) {
  switch (et) {
    case ExpressionType::Zero: return "zero";
    case ExpressionType::Pronoun: return "pronoun";
    case ExpressionType::DefiniteNp: return "definite";
    case ExpressionType::Name: return "name";
    case ExpressionType::IndefiniteNp: return "indefinite";
  }
  return "other";
}

std::string to_string(AdverbTrigger a) {
  return a == AdverbTrigger::Too ? "too" : "back";
}

std::string to_string(EntityKind k) {
  switch (k) {
    case EntityKind::Person: return "person";
    case EntityKind::Thing: return "thing";
    case EntityKind::Group: return "group";
  }
  return "thing";
}

}  // namespace ddp

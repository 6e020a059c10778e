#pragma once

#include <stdexcept>
#include <string>

namespace ddp {

using EntityId = std::string;

enum class Mood { Decl, Interrog, Imper };
enum class Tense { Past, Pres };
enum class Gender { Male, Female, Neuter };
enum class Number { Sg, Pl };

// GF ORDER hierarchy: SUBJECT > OBJECT > OBJECT2 > Others.
enum class GrammaticalFunction { Subject, Object, Object2, Other };

// EXP ORDER hierarchy: zero pronominal > pronoun > definite NP > indefinite NP.
// Names rank with definites.
enum class ExpressionType { Zero, Pronoun, DefiniteNp, Name, IndefiniteNp };

enum class AdverbTrigger { Too, Back };

enum class EntityKind { Person, Thing, Group };

int gf_rank(GrammaticalFunction gf);
int exp_rank(ExpressionType et);
bool is_pronominal(ExpressionType et);

std::string to_string(Mood m);
std::string to_string(Tense t);
std::string to_string(Gender g);
std::string to_string(Number n);
std::string to_string(GrammaticalFunction gf);
std::string to_string(ExpressionType et);
std::string to_string(AdverbTrigger a);
std::string to_string(EntityKind k);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexical or structural problem in an ILF source string.
struct ParseError : Error {
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct KbError : Error {
  using Error::Error;
};

struct ContextError : Error {
  using Error::Error;
};

struct ResolveError : Error {
  using Error::Error;
};

}  // namespace ddp

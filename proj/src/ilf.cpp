#include "ddp/ilf.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ddp {
namespace {

struct Token {
  enum Type { LParen, RParen, Symbol, End } type;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    if (pos_ >= src_.size()) return {Token::End, "", line_, col_};
    const int line = line_;
    const int col = col_;
    char c = src_[pos_];
    if (c == '(') {
      advance();
      return {Token::LParen, "(", line, col};
    }
    if (c == ')') {
      advance();
      return {Token::RParen, ")", line, col};
    }
    if (c == '"') {
      advance();
      std::string text;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        text.push_back(src_[pos_]);
        advance();
      }
      if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
      advance();
      return {Token::Symbol, text, line, col};
    }
    std::string text;
    while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
           src_[pos_] != '(' && src_[pos_] != ')') {
      text.push_back(src_[pos_]);
      advance();
    }
    return {Token::Symbol, text, line, col};
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class IlfParser {
 public:
  explicit IlfParser(std::string_view src) : lexer_(src) { shift(); }

  Ilf parse_utterance() {
    expect(Token::LParen, "expected '('");
    Ilf ilf;
    Token head = expect(Token::Symbol, "expected mood");
    if (head.text == "decl") {
      ilf.mood = Mood::Decl;
    } else if (head.text == "interrog") {
      ilf.mood = Mood::Interrog;
    } else if (head.text == "imper") {
      ilf.mood = Mood::Imper;
    } else {
      throw ParseError("missing mood: expected decl|interrog|imper, got '" +
                           head.text + "'",
                       head.line, head.column);
    }
    // Optional tense wrapper around the atom list.
    if (cur_.type == Token::LParen && peek_head() == "past") {
      ilf.tense = Tense::Past;
      parse_wrapped_atoms(ilf);
    } else if (cur_.type == Token::LParen && peek_head() == "pres") {
      ilf.tense = Tense::Pres;
      parse_wrapped_atoms(ilf);
    } else {
      parse_atoms_until_rparen(ilf);
    }
    expect(Token::RParen, "expected ')' closing utterance");
    if (ilf.atoms.empty())
      throw ParseError("utterance has no atoms", head.line, head.column);
    validate(ilf);
    derive_surface(ilf);
    return ilf;
  }

  bool at_end() const { return cur_.type == Token::End; }
  Token current() const { return cur_; }

 private:
  void shift() { cur_ = lexer_.next(); }

  Token expect(Token::Type type, const std::string& what) {
    if (cur_.type != type)
      throw ParseError(what + ", got '" + describe(cur_) + "'", cur_.line,
                       cur_.column);
    Token t = cur_;
    shift();
    return t;
  }

  static std::string describe(const Token& t) {
    switch (t.type) {
      case Token::LParen: return "(";
      case Token::RParen: return ")";
      case Token::Symbol: return t.text;
      case Token::End: return "<end of input>";
    }
    return "";
  }

  // Looks at the head symbol of the upcoming list without consuming it.
  std::string peek_head() {
    Lexer copy = lexer_;
    Token t = copy.next();
    return t.type == Token::Symbol ? t.text : "";
  }

  void parse_wrapped_atoms(Ilf& ilf) {
    expect(Token::LParen, "expected '('");
    shift();  // tense keyword
    parse_atoms_until_rparen(ilf);
    expect(Token::RParen, "expected ')' closing tense");
  }

  void parse_atoms_until_rparen(Ilf& ilf) {
    while (cur_.type == Token::LParen) ilf.atoms.push_back(parse_atom());
  }

  Atom parse_atom() {
    Token open = expect(Token::LParen, "expected '(' starting atom");
    Token head = expect(Token::Symbol, "expected atom head");
    Atom atom = dispatch(head);
    expect(Token::RParen, "expected ')' closing atom");
    (void)open;
    return atom;
  }

  Atom dispatch(const Token& head) {
    const std::string& h = head.text;
    if (h == "ev") {
      EventAtom a;
      a.var = symbol("event variable");
      a.pred = symbol("event predicate");
      return a;
    }
    if (h == "role") {
      RoleAtom a;
      a.theta = symbol("thematic label");
      a.gf = parse_gf();
      a.event_var = symbol("event variable");
      a.entity_var = symbol("entity variable");
      return a;
    }
    if (h == "pro") {
      ProAtom a;
      a.var = symbol("pronoun variable");
      a.gender = parse_gender();
      a.number = parse_number();
      return a;
    }
    if (h == "name") {
      NameAtom a;
      a.var = symbol("name variable");
      a.name = symbol("name string");
      return a;
    }
    if (h == "def") {
      DefAtom a;
      a.var = symbol("definite variable");
      return a;
    }
    if (h == "indef") {
      IndefAtom a;
      a.number = parse_number();
      a.var = symbol("indefinite variable");
      return a;
    }
    if (h == "noun") {
      NounAtom a;
      a.var = symbol("noun variable");
      a.pred = symbol("noun predicate");
      return a;
    }
    if (h == "nn") {
      NnAtom a;
      a.var = symbol("nn variable");
      a.pred = symbol("nn predicate");
      return a;
    }
    if (h == "adv") {
      AdvAtom a;
      a.event_var = symbol("adverb event variable");
      Token t = expect(Token::Symbol, "expected adverb");
      if (t.text == "too") {
        a.trigger = AdverbTrigger::Too;
      } else if (t.text == "back") {
        a.trigger = AdverbTrigger::Back;
      } else {
        throw ParseError("unknown adverb '" + t.text + "'", t.line, t.column);
      }
      return a;
    }
    if (h == "feat") {
      FeatAtom a;
      a.var = symbol("feature variable");
      a.gender = parse_gender();
      a.number = parse_number();
      return a;
    }
    throw ParseError("unknown atom head '" + h + "'", head.line, head.column);
  }

  std::string symbol(const std::string& what) {
    return expect(Token::Symbol, "expected " + what).text;
  }

  GrammaticalFunction parse_gf() {
    Token t = expect(Token::Symbol, "expected grammatical function");
    if (t.text == "subj") return GrammaticalFunction::Subject;
    if (t.text == "obj") return GrammaticalFunction::Object;
    if (t.text == "obj2") return GrammaticalFunction::Object2;
    if (t.text == "other") return GrammaticalFunction::Other;
    throw ParseError("unknown grammatical function '" + t.text + "'", t.line,
                     t.column);
  }

  Gender parse_gender() {
    Token t = expect(Token::Symbol, "expected gender");
    if (t.text == "male") return Gender::Male;
    if (t.text == "female") return Gender::Female;
    if (t.text == "neuter") return Gender::Neuter;
    throw ParseError("unknown gender '" + t.text + "'", t.line, t.column);
  }

  Number parse_number() {
    Token t = expect(Token::Symbol, "expected number");
    if (t.text == "sg") return Number::Sg;
    if (t.text == "pl") return Number::Pl;
    throw ParseError("unknown number '" + t.text + "'", t.line, t.column);
  }

  static void validate(const Ilf& ilf) {
    std::set<std::string> event_vars;
    std::set<std::string> nominal_vars;
    auto declare = [&](const std::string& var, bool event) {
      auto& pool = event ? event_vars : nominal_vars;
      if (event_vars.count(var) || nominal_vars.count(var))
        throw ParseError("duplicate variable declaration '" + var + "'", 1, 1);
      pool.insert(var);
    };
    for (const Atom& atom : ilf.atoms) {
      if (const auto* ev = std::get_if<EventAtom>(&atom)) declare(ev->var, true);
      if (const auto* p = std::get_if<ProAtom>(&atom)) declare(p->var, false);
      if (const auto* n = std::get_if<NameAtom>(&atom)) declare(n->var, false);
      if (const auto* d = std::get_if<DefAtom>(&atom)) declare(d->var, false);
      if (const auto* i = std::get_if<IndefAtom>(&atom)) declare(i->var, false);
    }
    auto check_nominal = [&](const std::string& var, const char* where) {
      if (!nominal_vars.count(var))
        throw ParseError(std::string("undeclared nominal variable '") + var +
                             "' in " + where,
                         1, 1);
    };
    auto check_event = [&](const std::string& var, const char* where) {
      if (!event_vars.count(var))
        throw ParseError(std::string("undeclared event variable '") + var +
                             "' in " + where,
                         1, 1);
    };
    std::map<std::string, int> subj_per_event, obj_per_event;
    std::set<std::string> feat_vars;
    for (const Atom& atom : ilf.atoms) {
      if (const auto* r = std::get_if<RoleAtom>(&atom)) {
        check_event(r->event_var, "role atom");
        check_nominal(r->entity_var, "role atom");
        if (r->gf == GrammaticalFunction::Subject &&
            ++subj_per_event[r->event_var] > 1)
          throw ParseError("more than one SUBJECT in clause '" + r->event_var + "'",
                           1, 1);
        if (r->gf == GrammaticalFunction::Object &&
            ++obj_per_event[r->event_var] > 1)
          throw ParseError("more than one OBJECT in clause '" + r->event_var + "'",
                           1, 1);
      } else if (const auto* n = std::get_if<NounAtom>(&atom)) {
        check_nominal(n->var, "noun atom");
      } else if (const auto* nn = std::get_if<NnAtom>(&atom)) {
        check_nominal(nn->var, "nn atom");
      } else if (const auto* adv = std::get_if<AdvAtom>(&atom)) {
        check_event(adv->event_var, "adv atom");
      } else if (const auto* f = std::get_if<FeatAtom>(&atom)) {
        check_nominal(f->var, "feat atom");
        for (const Atom& other : ilf.atoms)
          if (const auto* p = std::get_if<ProAtom>(&other))
            if (p->var == f->var)
              throw ParseError(
                  "feature atom on pronoun variable '" + f->var +
                      "'; pronoun features belong on the pro atom",
                  1, 1);
        if (!feat_vars.insert(f->var).second)
          throw ParseError("duplicate feature atom for '" + f->var + "'", 1, 1);
      }
    }
  }

  static void derive_surface(Ilf& ilf) {
    // Linear position: textual order of first mention of each nominal.
    std::map<std::string, NominalSurface> nominals;
    auto touch = [&](const std::string& var) {
      if (!nominals.count(var)) {
        NominalSurface s;
        s.position = static_cast<int>(nominals.size()) + 1;
        nominals[var] = s;
        ilf.surface.order.push_back(var);
      }
    };
    std::set<std::string> declared;
    for (const Atom& atom : ilf.atoms) {
      if (const auto* p = std::get_if<ProAtom>(&atom)) declared.insert(p->var);
      if (const auto* n = std::get_if<NameAtom>(&atom)) declared.insert(n->var);
      if (const auto* d = std::get_if<DefAtom>(&atom)) declared.insert(d->var);
      if (const auto* i = std::get_if<IndefAtom>(&atom)) declared.insert(i->var);
    }
    std::set<std::string> gf_seen;
    for (const Atom& atom : ilf.atoms) {
      if (const auto* r = std::get_if<RoleAtom>(&atom)) {
        if (declared.count(r->entity_var)) {
          touch(r->entity_var);
          // GF of a nominal is the function at its realization site: the
          // first role atom mentioning it.
          if (gf_seen.insert(r->entity_var).second)
            nominals[r->entity_var].gf = r->gf;
        }
      } else if (const auto* p = std::get_if<ProAtom>(&atom)) {
        touch(p->var);
        nominals[p->var].expression = ExpressionType::Pronoun;
      } else if (const auto* n = std::get_if<NameAtom>(&atom)) {
        touch(n->var);
        nominals[n->var].expression = ExpressionType::Name;
      } else if (const auto* d = std::get_if<DefAtom>(&atom)) {
        touch(d->var);
        nominals[d->var].expression = ExpressionType::DefiniteNp;
      } else if (const auto* i = std::get_if<IndefAtom>(&atom)) {
        touch(i->var);
        nominals[i->var].expression = ExpressionType::IndefiniteNp;
      }
    }
    ilf.surface.nominals = std::move(nominals);
  }

  Lexer lexer_;
  Token cur_;
};

}  // namespace

std::vector<const ProAtom*> Ilf::pronouns() const {
  std::vector<const ProAtom*> out;
  for (const std::string& var : surface.order)
    for (const Atom& atom : atoms)
      if (const auto* p = std::get_if<ProAtom>(&atom))
        if (p->var == var) out.push_back(p);
  return out;
}

std::vector<const EventAtom*> Ilf::events() const {
  std::vector<const EventAtom*> out;
  for (const Atom& atom : atoms)
    if (const auto* e = std::get_if<EventAtom>(&atom)) out.push_back(e);
  return out;
}

std::vector<const AdvAtom*> Ilf::adverbs() const {
  std::vector<const AdvAtom*> out;
  for (const Atom& atom : atoms)
    if (const auto* a = std::get_if<AdvAtom>(&atom)) out.push_back(a);
  return out;
}

const NounAtom* Ilf::noun_of(const std::string& var) const {
  for (const Atom& atom : atoms)
    if (const auto* n = std::get_if<NounAtom>(&atom))
      if (n->var == var) return n;
  return nullptr;
}

const NameAtom* Ilf::name_of(const std::string& var) const {
  for (const Atom& atom : atoms)
    if (const auto* n = std::get_if<NameAtom>(&atom))
      if (n->var == var) return n;
  return nullptr;
}

Ilf parse_ilf(std::string_view text) {
  IlfParser parser(text);
  Ilf ilf = parser.parse_utterance();
  if (!parser.at_end()) {
    Token t = parser.current();
    throw ParseError("trailing input after utterance", t.line, t.column);
  }
  return ilf;
}

namespace {

void print_atom(std::ostringstream& out, const Atom& atom) {
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, EventAtom>) {
          out << "(ev " << a.var << ' ' << a.pred << ')';
        } else if constexpr (std::is_same_v<T, RoleAtom>) {
          out << "(role " << a.theta << ' ' << to_string(a.gf) << ' '
              << a.event_var << ' ' << a.entity_var << ')';
        } else if constexpr (std::is_same_v<T, ProAtom>) {
          out << "(pro " << a.var << ' ' << to_string(a.gender) << ' '
              << to_string(a.number) << ')';
        } else if constexpr (std::is_same_v<T, NameAtom>) {
          out << "(name " << a.var << ' ' << a.name << ')';
        } else if constexpr (std::is_same_v<T, DefAtom>) {
          out << "(def " << a.var << ')';
        } else if constexpr (std::is_same_v<T, IndefAtom>) {
          out << "(indef " << to_string(a.number) << ' ' << a.var << ')';
        } else if constexpr (std::is_same_v<T, NounAtom>) {
          out << "(noun " << a.var << ' ' << a.pred << ')';
        } else if constexpr (std::is_same_v<T, NnAtom>) {
          out << "(nn " << a.var << ' ' << a.pred << ')';
        } else if constexpr (std::is_same_v<T, AdvAtom>) {
          out << "(adv " << a.event_var << ' ' << to_string(a.trigger) << ')';
        } else if constexpr (std::is_same_v<T, FeatAtom>) {
          out << "(feat " << a.var << ' ' << to_string(a.gender) << ' '
              << to_string(a.number) << ')';
        }
      },
      atom);
}

}  // namespace

std::string print_ilf(const Ilf& ilf) {
  std::ostringstream out;
  out << '(' << to_string(ilf.mood) << ' ';
  if (ilf.tense) out << '(' << to_string(*ilf.tense) << ' ';
  bool first = true;
  for (const Atom& atom : ilf.atoms) {
    if (!first) out << ' ';
    first = false;
    print_atom(out, atom);
  }
  if (ilf.tense) out << ')';
  out << ')';
  return out.str();
}

std::vector<Ilf> parse_discourse(std::string_view text) {
  std::vector<Ilf> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    size_t start = trimmed.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (trimmed[start] == ';') continue;
    try {
      out.push_back(parse_ilf(trimmed));
    } catch (const ParseError& e) {
      throw Error("utterance " + std::to_string(out.size() + 1) + " (line " +
                  std::to_string(lineno) + "): " + e.what());
    }
  }
  return out;
}

std::vector<Ilf> load_discourse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open discourse file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_discourse(buf.str());
}

}  // namespace ddp

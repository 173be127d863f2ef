#include "catprob/workspace.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <utility>

#include "catprob/error.hpp"
#include "catprob/rational.hpp"

namespace catprob {
namespace {

struct Token {
  enum class Kind {
    Ident,
    Number,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Equals,
    Colon,
    Dot,
    Arrow,
    Squig,
    FatArrow,
    End
  };

  Kind kind;
  std::string text;
  std::size_t line = 0;
  std::size_t col = 0;
};

using Kind = Token::Kind;

[[noreturn]] void parse_fail(std::size_t line, std::size_t col, const std::string& what) {
  throw Error("ParseError",
              std::to_string(line) + ":" + std::to_string(col) + ": " + what);
}

class Tokenizer {
 public:
  explicit Tokenizer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      if (eof()) break;
      out.push_back(scan());
    }
    out.push_back({Kind::End, "", line_, col_});
    return out;
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char cur() const { return src_[pos_]; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(cur()))) {
        advance();
      } else if (cur() == '#') {
        while (!eof() && cur() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token scan() {
    const std::size_t line = line_;
    const std::size_t col = col_;
    const char c = cur();
    switch (c) {
      case '{': advance(); return {Kind::LBrace, "{", line, col};
      case '}': advance(); return {Kind::RBrace, "}", line, col};
      case ';': advance(); return {Kind::Semi, ";", line, col};
      case ',': advance(); return {Kind::Comma, ",", line, col};
      case '.': advance(); return {Kind::Dot, ".", line, col};
      case ':': advance(); return {Kind::Colon, ":", line, col};
      default: break;
    }
    if (c == '=') {
      advance();
      if (!eof() && cur() == '>') {
        advance();
        return {Kind::FatArrow, "=>", line, col};
      }
      return {Kind::Equals, "=", line, col};
    }
    if (c == '-') {
      advance();
      if (!eof() && cur() == '>') {
        advance();
        return {Kind::Arrow, "->", line, col};
      }
      if (!eof() && std::isdigit(static_cast<unsigned char>(cur()))) {
        return scan_number(line, col, true);
      }
      parse_fail(line, col, "stray '-'");
    }
    if (c == '~') {
      advance();
      if (!eof() && cur() == '>') {
        advance();
        return {Kind::Squig, "~>", line, col};
      }
      parse_fail(line, col, "expected '>' after '~'");
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return scan_number(line, col, false);
    if (c == '(') return {Kind::Ident, scan_pair(), line, col};
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return {Kind::Ident, scan_ident(), line, col};
    }
    parse_fail(line, col, std::string("unexpected character '") + c + "'");
  }

  Token scan_number(std::size_t line, std::size_t col, bool negative) {
    std::string text = negative ? "-" : "";
    while (!eof() && std::isdigit(static_cast<unsigned char>(cur()))) {
      text += cur();
      advance();
    }
    if (!eof() && cur() == '/') {
      text += '/';
      advance();
      while (!eof() && std::isdigit(static_cast<unsigned char>(cur()))) {
        text += cur();
        advance();
      }
    }
    return {Kind::Number, text, line, col};
  }

  std::string scan_ident() {
    std::string text;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_')) {
      text += cur();
      advance();
    }
    return text;
  }

  // Pair labels "(x,y)" are single point names; components may nest.
  std::string scan_pair() {
    advance();  // '('
    std::string text = "(";
    text += scan_label();
    if (eof() || cur() != ',') parse_fail(line_, col_, "expected ',' in pair label");
    advance();
    text += ',';
    text += scan_label();
    if (eof() || cur() != ')') parse_fail(line_, col_, "expected ')' in pair label");
    advance();
    text += ')';
    return text;
  }

  std::string scan_label() {
    if (!eof() && cur() == '(') return scan_pair();
    if (eof() || !std::isalpha(static_cast<unsigned char>(cur()))) {
      parse_fail(line_, col_, "expected a name");
    }
    return scan_ident();
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

std::string literal_text(const std::vector<Label>& members) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ',';
    out += members[i];
  }
  out += '}';
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Workspace run() {
    while (peek().kind != Kind::End) parse_decl();
    return std::move(ws_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail_at(const Token& t, const std::string& what) {
    parse_fail(t.line, t.col, what);
  }

  const Token& expect(Kind kind, const char* what) {
    if (peek().kind != kind) fail_at(peek(), std::string("expected ") + what);
    return next();
  }

  std::string expect_ident(const char* what) { return expect(Kind::Ident, what).text; }

  bool accept(Kind kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  void expect_keyword(const char* keyword) {
    const Token& t = peek();
    if (t.kind != Kind::Ident || t.text != keyword) {
      fail_at(t, "expected '" + std::string(keyword) + "'");
    }
    ++pos_;
  }

  Rat parse_number() {
    const Token& t = expect(Kind::Number, "a rational number");
    try {
      return parse_rational(t.text);
    } catch (const Error& e) {
      fail_at(t, e.message());
    }
  }

  std::vector<Label> parse_atom_literal() {
    expect(Kind::LBrace, "'{'");
    std::vector<Label> members;
    members.push_back(expect_ident("a point name"));
    while (accept(Kind::Comma)) members.push_back(expect_ident("a point name"));
    expect(Kind::RBrace, "'}'");
    return members;
  }

  std::size_t resolve_atom(const FinSpace& space, const std::vector<Label>& members) {
    const auto idx = space.atom_index(members);
    if (!idx) {
      throw Error("ResolveError", "'" + literal_text(members) + "' is not an atom of space '" +
                                      space.name() + "'");
    }
    return *idx;
  }

  void check_fresh(const char* kind, const std::string& name, bool exists, const Token& at) {
    if (exists) fail_at(at, std::string("duplicate ") + kind + " '" + name + "'");
  }

  void parse_decl() {
    const Token& kw = peek();
    if (kw.kind != Kind::Ident) fail_at(kw, "expected a declaration");
    if (kw.text == "space") {
      parse_space();
    } else if (kw.text == "measure") {
      parse_measure();
    } else if (kw.text == "observable") {
      parse_observable();
    } else if (kw.text == "map") {
      parse_map();
    } else if (kw.text == "kernel") {
      parse_kernel();
    } else if (kw.text == "mix") {
      parse_mix();
    } else if (kw.text == "mix2") {
      parse_mix2();
    } else if (kw.text == "chi") {
      parse_chi();
    } else if (kw.text == "category") {
      parse_category();
    } else if (kw.text == "functor") {
      parse_functor();
    } else if (kw.text == "nattrans") {
      parse_nattrans();
    } else {
      fail_at(kw, "unknown declaration '" + kw.text + "'");
    }
  }

  void parse_space() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a space name");
    check_fresh("space", name, ws_.spaces.count(name) != 0, name_tok);
    expect(Kind::LBrace, "'{'");
    std::vector<Label> points;
    std::vector<std::vector<Label>> atoms;
    bool have_points = false;
    bool have_atoms = false;
    while (peek().kind != Kind::RBrace) {
      const Token sec = peek();
      const std::string section = expect_ident("'points' or 'atoms'");
      if (section == "points") {
        if (have_points) fail_at(sec, "duplicate points section");
        have_points = true;
        expect(Kind::Equals, "'='");
        points.push_back(expect_ident("a point name"));
        while (accept(Kind::Comma)) points.push_back(expect_ident("a point name"));
        expect(Kind::Semi, "';'");
      } else if (section == "atoms") {
        if (have_atoms) fail_at(sec, "duplicate atoms section");
        have_atoms = true;
        expect(Kind::Equals, "'='");
        while (peek().kind == Kind::LBrace) atoms.push_back(parse_atom_literal());
        if (atoms.empty()) fail_at(peek(), "expected at least one atom");
        expect(Kind::Semi, "';'");
      } else {
        fail_at(sec, "expected 'points' or 'atoms'");
      }
    }
    expect(Kind::RBrace, "'}'");
    if (!have_points) fail_at(name_tok, "space '" + name + "' needs a points section");
    if (!have_atoms) fail_at(name_tok, "space '" + name + "' needs an atoms section");
    ws_.spaces.emplace(name, FinSpace::make(name, std::move(points), std::move(atoms)));
    ws_.order.push_back({"space", name});
  }

  std::vector<Rat> parse_atom_table(const FinSpace& space, const std::string& what,
                                    const std::string& name) {
    std::vector<std::optional<Rat>> vals(space.atom_count());
    while (peek().kind != Kind::RBrace) {
      const Token at = peek();
      const std::size_t idx = resolve_atom(space, parse_atom_literal());
      if (vals[idx]) fail_at(at, "duplicate entry for atom " + space.atom_text(idx));
      expect(Kind::Equals, "'='");
      vals[idx] = parse_number();
      expect(Kind::Semi, "';'");
    }
    expect(Kind::RBrace, "'}'");
    std::vector<Rat> out;
    out.reserve(vals.size());
    for (std::size_t a = 0; a < vals.size(); ++a) {
      if (!vals[a]) {
        throw Error("ArityMismatch",
                    what + " '" + name + "' has no entry for atom " + space.atom_text(a));
      }
      out.push_back(std::move(*vals[a]));
    }
    return out;
  }

  void parse_measure() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a measure name");
    check_fresh("measure", name, ws_.measures.count(name) != 0, name_tok);
    expect_keyword("on");
    const FinSpace& space = ws_.space(expect_ident("a space name"));
    expect(Kind::LBrace, "'{'");
    std::vector<Rat> weights = parse_atom_table(space, "measure", name);
    Rat total = 0;
    for (const Rat& w : weights) total += w;
    const MeasureKind kind = total == 1 ? MeasureKind::Probability : MeasureKind::Finite;
    ws_.measures.emplace(name, RationalMeasure::make(space, std::move(weights), kind));
    ws_.order.push_back({"measure", name});
  }

  void parse_observable() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("an observable name");
    check_fresh("observable", name, ws_.observables.count(name) != 0, name_tok);
    expect_keyword("on");
    const FinSpace& space = ws_.space(expect_ident("a space name"));
    expect(Kind::LBrace, "'{'");
    std::vector<Rat> values = parse_atom_table(space, "observable", name);
    ws_.observables.emplace(name, RealObservable::make(space, std::move(values)));
    ws_.order.push_back({"observable", name});
  }

  void parse_map() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a map name");
    check_fresh("map", name, ws_.maps.count(name) != 0, name_tok);
    expect(Kind::Colon, "':'");
    const FinSpace& dom = ws_.space(expect_ident("a space name"));
    expect(Kind::Arrow, "'->'");
    const FinSpace& cod = ws_.space(expect_ident("a space name"));
    expect(Kind::LBrace, "'{'");
    std::map<Label, Label> assignment;
    while (peek().kind != Kind::RBrace) {
      const Token at = peek();
      const std::string from = expect_ident("a point name");
      expect(Kind::Arrow, "'->'");
      const std::string to = expect_ident("a point name");
      expect(Kind::Semi, "';'");
      if (assignment.count(from)) {
        fail_at(at, "duplicate assignment for point '" + from + "'");
      }
      assignment.emplace(from, to);
    }
    expect(Kind::RBrace, "'}'");
    ws_.maps.emplace(name, MeasurableMap::make(name, dom, cod, assignment));
    ws_.order.push_back({"map", name});
  }

  void parse_kernel() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a kernel name");
    check_fresh("kernel", name, ws_.kernels.count(name) != 0, name_tok);
    expect(Kind::Colon, "':'");
    const FinSpace& dom = ws_.space(expect_ident("a space name"));
    expect(Kind::Squig, "'~>'");
    const FinSpace& cod = ws_.space(expect_ident("a space name"));
    expect(Kind::LBrace, "'{'");
    std::vector<std::optional<std::vector<Rat>>> rows(dom.atom_count());
    while (peek().kind != Kind::RBrace) {
      const Token at = peek();
      const std::size_t row_idx = resolve_atom(dom, parse_atom_literal());
      if (rows[row_idx]) fail_at(at, "duplicate row for atom " + dom.atom_text(row_idx));
      expect(Kind::Colon, "':'");
      std::vector<std::optional<Rat>> entries(cod.atom_count());
      do {
        const Token eat = peek();
        const std::size_t col_idx = resolve_atom(cod, parse_atom_literal());
        if (entries[col_idx]) {
          fail_at(eat, "duplicate entry for atom " + cod.atom_text(col_idx));
        }
        expect(Kind::Equals, "'='");
        entries[col_idx] = parse_number();
      } while (accept(Kind::Comma));
      expect(Kind::Semi, "';'");
      std::vector<Rat> row;
      row.reserve(entries.size());
      for (std::size_t b = 0; b < entries.size(); ++b) {
        if (!entries[b]) {
          throw Error("ArityMismatch", "kernel '" + name + "' row " + dom.atom_text(row_idx) +
                                           ": no entry for atom " + cod.atom_text(b));
        }
        row.push_back(std::move(*entries[b]));
      }
      rows[row_idx] = std::move(row);
    }
    expect(Kind::RBrace, "'}'");
    std::vector<std::vector<Rat>> all;
    all.reserve(rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      if (!rows[a]) {
        throw Error("ArityMismatch",
                    "kernel '" + name + "' has no row for atom " + dom.atom_text(a));
      }
      all.push_back(std::move(*rows[a]));
    }
    ws_.kernels.emplace(name, StochKernel::make(dom, cod, std::move(all)));
    ws_.order.push_back({"kernel", name});
  }

  void parse_mix() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a mix name");
    check_fresh("mix", name, ws_.mixes.count(name) != 0, name_tok);
    expect_keyword("on");
    const FinSpace& space = ws_.space(expect_ident("a space name"));
    expect(Kind::LBrace, "'{'");
    std::vector<RationalMeasure> support;
    std::vector<Rat> weights;
    std::set<std::string> seen;
    while (peek().kind != Kind::RBrace) {
      const Token at = peek();
      const std::string mname = expect_ident("a measure name");
      if (!seen.insert(mname).second) {
        fail_at(at, "duplicate entry for measure '" + mname + "'");
      }
      support.push_back(ws_.measure(mname));
      expect(Kind::Equals, "'='");
      weights.push_back(parse_number());
      expect(Kind::Semi, "';'");
    }
    expect(Kind::RBrace, "'}'");
    ws_.mixes.emplace(name, MixMeasure::make(space, std::move(support), std::move(weights)));
    ws_.order.push_back({"mix", name});
  }

  void parse_mix2() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a mix2 name");
    check_fresh("mix2", name, ws_.mix2s.count(name) != 0, name_tok);
    expect_keyword("on");
    const FinSpace& space = ws_.space(expect_ident("a space name"));
    expect(Kind::LBrace, "'{'");
    std::vector<MixMeasure> support;
    std::vector<Rat> weights;
    std::set<std::string> seen;
    while (peek().kind != Kind::RBrace) {
      const Token at = peek();
      const std::string mname = expect_ident("a mix name");
      if (!seen.insert(mname).second) {
        fail_at(at, "duplicate entry for mix '" + mname + "'");
      }
      support.push_back(ws_.mix(mname));
      expect(Kind::Equals, "'='");
      weights.push_back(parse_number());
      expect(Kind::Semi, "';'");
    }
    expect(Kind::RBrace, "'}'");
    ws_.mix2s.emplace(name,
                      MixMixMeasure::make(space, std::move(support), std::move(weights)));
    ws_.order.push_back({"mix2", name});
  }

  void parse_chi() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a chi object name");
    check_fresh("chi", name, ws_.chis.count(name) != 0, name_tok);
    expect_keyword("on");
    const FinSpace& space = ws_.space(expect_ident("a space name"));
    expect(Kind::LBrace, "'{'");
    std::vector<std::vector<Label>> blocks;
    std::string measure_name;
    bool have_atoms = false;
    bool have_measure = false;
    while (peek().kind != Kind::RBrace) {
      const Token sec = peek();
      const std::string section = expect_ident("'atoms' or 'measure'");
      if (section == "atoms") {
        if (have_atoms) fail_at(sec, "duplicate atoms section");
        have_atoms = true;
        expect(Kind::Equals, "'='");
        while (peek().kind == Kind::LBrace) blocks.push_back(parse_atom_literal());
        if (blocks.empty()) fail_at(peek(), "expected at least one block");
        expect(Kind::Semi, "';'");
      } else if (section == "measure") {
        if (have_measure) fail_at(sec, "duplicate measure section");
        have_measure = true;
        expect(Kind::Equals, "'='");
        measure_name = expect_ident("a measure name");
        expect(Kind::Semi, "';'");
      } else {
        fail_at(sec, "expected 'atoms' or 'measure'");
      }
    }
    expect(Kind::RBrace, "'}'");
    if (!have_atoms) fail_at(name_tok, "chi '" + name + "' needs an atoms section");
    if (!have_measure) fail_at(name_tok, "chi '" + name + "' needs a measure section");
    const RationalMeasure& m = ws_.measure(measure_name);
    if (m.space() != space) {
      throw Error("SpaceMismatch", "chi '" + name + "': measure '" + measure_name +
                                       "' does not live on '" + space.name() + "'");
    }
    ws_.chis.emplace(name, ChiObject::make(std::move(blocks), m));
    ws_.order.push_back({"chi", name});
  }

  void parse_category() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a category name");
    check_fresh("category", name, ws_.categories.count(name) != 0, name_tok);
    expect(Kind::LBrace, "'{'");
    FinCategory cat;
    cat.name = name;
    bool have_objects = false;
    bool have_arrows = false;
    bool have_ids = false;
    bool have_comp = false;
    while (peek().kind != Kind::RBrace) {
      const Token sec = peek();
      const std::string section = expect_ident("a category section");
      if (section == "objects") {
        if (have_objects) fail_at(sec, "duplicate objects section");
        have_objects = true;
        expect(Kind::Equals, "'='");
        if (peek().kind != Kind::Semi) {
          cat.objects.push_back(expect_ident("an object name"));
          while (accept(Kind::Comma)) cat.objects.push_back(expect_ident("an object name"));
        }
        expect(Kind::Semi, "';'");
      } else if (section == "arrows") {
        if (have_arrows) fail_at(sec, "duplicate arrows section");
        have_arrows = true;
        expect(Kind::Equals, "'='");
        if (peek().kind != Kind::Semi) {
          do {
            Arrow a;
            a.id = expect_ident("an arrow name");
            expect(Kind::Colon, "':'");
            a.dom = expect_ident("an object name");
            expect(Kind::Arrow, "'->'");
            a.cod = expect_ident("an object name");
            cat.arrows.push_back(std::move(a));
          } while (accept(Kind::Comma));
        }
        expect(Kind::Semi, "';'");
      } else if (section == "ids") {
        if (have_ids) fail_at(sec, "duplicate ids section");
        have_ids = true;
        expect(Kind::Equals, "'='");
        if (peek().kind != Kind::Semi) {
          do {
            const Token at = peek();
            const std::string obj = expect_ident("an object name");
            expect(Kind::Colon, "':'");
            const std::string arrow = expect_ident("an arrow name");
            if (!cat.ids.emplace(obj, arrow).second) {
              fail_at(at, "duplicate identity for object '" + obj + "'");
            }
          } while (accept(Kind::Comma));
        }
        expect(Kind::Semi, "';'");
      } else if (section == "comp") {
        if (have_comp) fail_at(sec, "duplicate comp section");
        have_comp = true;
        expect(Kind::Equals, "'='");
        if (peek().kind != Kind::Semi) {
          do {
            const Token at = peek();
            const std::string outer = expect_ident("an arrow name");
            expect(Kind::Dot, "'.'");
            const std::string inner = expect_ident("an arrow name");
            expect(Kind::Colon, "':'");
            const std::string result = expect_ident("an arrow name");
            if (!cat.comp.emplace(std::make_pair(outer, inner), result).second) {
              fail_at(at, "duplicate composition entry '" + outer + "." + inner + "'");
            }
          } while (accept(Kind::Comma));
        }
        expect(Kind::Semi, "';'");
      } else {
        fail_at(sec, "expected 'objects', 'arrows', 'ids' or 'comp'");
      }
    }
    expect(Kind::RBrace, "'}'");
    if (!have_objects) fail_at(name_tok, "category '" + name + "' needs an objects section");
    if (!have_arrows) fail_at(name_tok, "category '" + name + "' needs an arrows section");
    if (!have_ids) fail_at(name_tok, "category '" + name + "' needs an ids section");
    if (!have_comp) fail_at(name_tok, "category '" + name + "' needs a comp section");
    // Structural audit throws here; law violations wait for the check
    // commands so defective tables stay loadable and reportable.
    validate_category(cat);
    ws_.categories.emplace(name, std::move(cat));
    ws_.order.push_back({"category", name});
  }

  void parse_functor() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a functor name");
    check_fresh("functor", name, ws_.functors.count(name) != 0, name_tok);
    expect(Kind::Colon, "':'");
    const FinCategory& src = ws_.category(expect_ident("a category name"));
    expect(Kind::Arrow, "'->'");
    const FinCategory& dst = ws_.category(expect_ident("a category name"));
    expect(Kind::LBrace, "'{'");
    FinFunctor fun;
    fun.name = name;
    fun.src = src;
    fun.dst = dst;
    bool have_objects = false;
    bool have_arrows = false;
    while (peek().kind != Kind::RBrace) {
      const Token sec = peek();
      const std::string section = expect_ident("'objects' or 'arrows'");
      if (section != "objects" && section != "arrows") {
        fail_at(sec, "expected 'objects' or 'arrows'");
      }
      const bool is_objects = section == "objects";
      bool& have = is_objects ? have_objects : have_arrows;
      if (have) fail_at(sec, "duplicate " + section + " section");
      have = true;
      expect(Kind::Equals, "'='");
      if (peek().kind != Kind::Semi) {
        do {
          const Token at = peek();
          const std::string from = expect_ident("a name");
          expect(Kind::Arrow, "'->'");
          const std::string to = expect_ident("a name");
          auto& table = is_objects ? fun.object_map : fun.arrow_map;
          if (!table.emplace(from, to).second) {
            fail_at(at, "duplicate image for '" + from + "'");
          }
        } while (accept(Kind::Comma));
      }
      expect(Kind::Semi, "';'");
    }
    expect(Kind::RBrace, "'}'");
    if (!have_objects) fail_at(name_tok, "functor '" + name + "' needs an objects section");
    if (!have_arrows) fail_at(name_tok, "functor '" + name + "' needs an arrows section");
    check_functor(fun);  // structural audit; law report is for functor-check
    ws_.functors.emplace(name, std::move(fun));
    ws_.order.push_back({"functor", name});
  }

  void parse_nattrans() {
    next();
    const Token name_tok = peek();
    const std::string name = expect_ident("a transformation name");
    check_fresh("nattrans", name, ws_.nattranses.count(name) != 0, name_tok);
    expect(Kind::Colon, "':'");
    const FinFunctor& from = ws_.functor(expect_ident("a functor name"));
    expect(Kind::FatArrow, "'=>'");
    const FinFunctor& to = ws_.functor(expect_ident("a functor name"));
    expect(Kind::LBrace, "'{'");
    NatTransformation nat;
    nat.name = name;
    nat.from = from;
    nat.to = to;
    bool have_components = false;
    while (peek().kind != Kind::RBrace) {
      const Token sec = peek();
      const std::string section = expect_ident("'components'");
      if (section != "components") fail_at(sec, "expected 'components'");
      if (have_components) fail_at(sec, "duplicate components section");
      have_components = true;
      expect(Kind::Equals, "'='");
      if (peek().kind != Kind::Semi) {
        do {
          const Token at = peek();
          const std::string obj = expect_ident("an object name");
          expect(Kind::Arrow, "'->'");
          const std::string arrow = expect_ident("an arrow name");
          if (!nat.components.emplace(obj, arrow).second) {
            fail_at(at, "duplicate component at '" + obj + "'");
          }
        } while (accept(Kind::Comma));
      }
      expect(Kind::Semi, "';'");
    }
    expect(Kind::RBrace, "'}'");
    if (!have_components) {
      fail_at(name_tok, "nattrans '" + name + "' needs a components section");
    }
    check_nat_trans(nat);  // structural audit; law report is for nattrans-check
    ws_.nattranses.emplace(name, std::move(nat));
    ws_.order.push_back({"nattrans", name});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Workspace ws_;
};

template <typename Map>
const typename Map::mapped_type& find_or_throw(const Map& m, const std::string& name,
                                               const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) {
    throw Error("ResolveError", std::string("unknown ") + kind + " '" + name + "'");
  }
  return it->second;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

const FinSpace& Workspace::space(const std::string& name) const {
  return find_or_throw(spaces, name, "space");
}
const RationalMeasure& Workspace::measure(const std::string& name) const {
  return find_or_throw(measures, name, "measure");
}
const MeasurableMap& Workspace::map(const std::string& name) const {
  return find_or_throw(maps, name, "map");
}
const StochKernel& Workspace::kernel(const std::string& name) const {
  return find_or_throw(kernels, name, "kernel");
}
const RealObservable& Workspace::observable(const std::string& name) const {
  return find_or_throw(observables, name, "observable");
}
const MixMeasure& Workspace::mix(const std::string& name) const {
  return find_or_throw(mixes, name, "mix");
}
const MixMixMeasure& Workspace::mix2(const std::string& name) const {
  return find_or_throw(mix2s, name, "mix2");
}
const ChiObject& Workspace::chi(const std::string& name) const {
  return find_or_throw(chis, name, "chi object");
}
const FinCategory& Workspace::category(const std::string& name) const {
  return find_or_throw(categories, name, "category");
}
const FinFunctor& Workspace::functor(const std::string& name) const {
  return find_or_throw(functors, name, "functor");
}
const NatTransformation& Workspace::nattrans(const std::string& name) const {
  return find_or_throw(nattranses, name, "nattrans");
}

Workspace parse_workspace(const std::string& source) {
  return Parser(Tokenizer(source).run()).run();
}

std::string print_space(const FinSpace& space, const std::string& name) {
  std::string out = "space " + name + " {\n  points = ";
  out += join(space.points(), ", ");
  out += ";\n  atoms =";
  for (std::size_t a = 0; a < space.atom_count(); ++a) {
    out += ' ';
    out += space.atom_text(a);
  }
  out += ";\n}\n";
  return out;
}

std::string print_measure(const RationalMeasure& m, const std::string& name) {
  std::string out = "measure " + name + " on " + m.space().name() + " {\n";
  for (std::size_t a = 0; a < m.space().atom_count(); ++a) {
    out += "  " + m.space().atom_text(a) + " = " + format_rational(m.weight(a)) + ";\n";
  }
  out += "}\n";
  return out;
}

std::string print_observable(const RealObservable& obs, const std::string& name) {
  std::string out = "observable " + name + " on " + obs.space().name() + " {\n";
  for (std::size_t a = 0; a < obs.space().atom_count(); ++a) {
    out += "  " + obs.space().atom_text(a) + " = " + format_rational(obs.value(a)) + ";\n";
  }
  out += "}\n";
  return out;
}

std::string print_map(const MeasurableMap& f, const std::string& name) {
  std::string out =
      "map " + name + " : " + f.dom().name() + " -> " + f.cod().name() + " {\n";
  for (std::size_t i = 0; i < f.dom().point_count(); ++i) {
    out += "  " + f.dom().points()[i] + " -> " + f.cod().points()[f.graph()[i]] + ";\n";
  }
  out += "}\n";
  return out;
}

std::string print_kernel(const StochKernel& k, const std::string& name) {
  std::string out =
      "kernel " + name + " : " + k.dom().name() + " ~> " + k.cod().name() + " {\n";
  for (std::size_t a = 0; a < k.dom().atom_count(); ++a) {
    out += "  " + k.dom().atom_text(a) + " :";
    for (std::size_t b = 0; b < k.cod().atom_count(); ++b) {
      out += " " + k.cod().atom_text(b) + " = " + format_rational(k.entry(a, b));
      out += (b + 1 < k.cod().atom_count()) ? "," : ";";
    }
    out += "\n";
  }
  out += "}\n";
  return out;
}

std::string print_category(const FinCategory& cat, const std::string& name) {
  std::string out = "category " + name + " {\n  objects = ";
  out += join(cat.objects, ", ");
  out += ";\n  arrows = ";
  std::vector<std::string> arrows;
  arrows.reserve(cat.arrows.size());
  for (const auto& a : cat.arrows) arrows.push_back(a.id + " : " + a.dom + " -> " + a.cod);
  out += join(arrows, ", ");
  out += ";\n  ids = ";
  std::vector<std::string> ids;
  ids.reserve(cat.ids.size());
  for (const auto& [obj, arrow] : cat.ids) ids.push_back(obj + " : " + arrow);
  out += join(ids, ", ");
  out += ";\n  comp = ";
  std::vector<std::string> comps;
  comps.reserve(cat.comp.size());
  for (const auto& [key, val] : cat.comp) {
    comps.push_back(key.first + "." + key.second + " : " + val);
  }
  out += join(comps, ", ");
  out += ";\n}\n";
  return out;
}

}  // namespace catprob

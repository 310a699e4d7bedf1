#include "qrel/format.hpp"

#include <cctype>
#include <sstream>

namespace qrel {

namespace {

struct Token {
  enum class Kind { ident, number, punct, end };
  Kind kind = Kind::end;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  const Token& peek2() {
    if (!has_next_) {
      next_ = lex();
      has_next_ = true;
    }
    return next_;
  }

  Token take() {
    Token out = current_;
    advance();
    return out;
  }

 private:
  void advance() {
    if (has_next_) {
      current_ = next_;
      has_next_ = false;
    } else {
      current_ = lex();
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, col_);
  }

  Token lex() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') pos_++;
        continue;
      }
      if (c == '\n') {
        pos_++;
        line_++;
        col_ = 1;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        pos_++;
        col_++;
        continue;
      }
      break;
    }
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) return t;

    char c = text_[pos_];
    auto is_ident_start = [](char ch) {
      return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' || ch == '*';
    };
    auto is_ident = [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '*';
    };

    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      consume(2);
      t.kind = Token::Kind::punct;
      t.text = "->";
      return t;
    }
    if (c == '-' && text_.compare(pos_, 4, "-inf") == 0) {
      consume(4);
      t.kind = Token::Kind::number;
      t.text = "-inf";
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::size_t start = pos_;
      consume(1);
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
        consume(1);
      t.kind = Token::Kind::number;
      t.text = text_.substr(start, pos_ - start);
      return t;
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      // A hyphen continues an identifier only when followed by another
      // identifier character, so that "evt-quantale" lexes whole while
      // "A->B" still yields the arrow.
      while (pos_ < text_.size() &&
             (is_ident(text_[pos_]) ||
              (text_[pos_] == '-' && pos_ + 1 < text_.size() && is_ident(text_[pos_ + 1]))))
        consume(1);
      t.text = text_.substr(start, pos_ - start);
      t.kind = t.text == "inf" ? Token::Kind::number : Token::Kind::ident;
      return t;
    }
    if (std::string("=:,;()[]{}").find(c) != std::string::npos) {
      consume(1);
      t.kind = Token::Kind::punct;
      t.text = std::string(1, c);
      return t;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void consume(int n) {
    pos_ += n;
    col_ += n;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
  Token next_;
  bool has_next_ = false;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  InstanceDocument run() {
    expect_keyword("quantale");
    Token qname = expect(Token::Kind::ident, "quantale name");
    std::string full = qname.text;
    if (lex_.peek().text == ":") {
      lex_.take();
      full += ":" + expect(Token::Kind::ident, "t-norm").text;
    }
    auto q = QuantaleId::parse(full);
    if (!q) fail_at(qname, "unknown quantale '" + full + "'");
    doc_.quantale = *q;

    while (lex_.peek().kind != Token::Kind::end) {
      Token kw = expect(Token::Kind::ident, "block keyword");
      if (kw.text == "set")
        parse_set();
      else if (kw.text == "map")
        parse_map();
      else if (kw.text == "rel")
        parse_rel();
      else if (kw.text == "fun")
        parse_fun();
      else if (kw.text == "cat")
        parse_cat();
      else if (kw.text == "space")
        parse_space();
      else if (kw.text == "modular")
        parse_modular();
      else if (kw.text == "query")
        parse_query();
      else
        fail_at(kw, "unknown block '" + kw.text + "'");
    }
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail_at(const Token& t, const std::string& message) {
    throw ParseError(message, t.line, t.col);
  }

  Token expect(Token::Kind kind, const std::string& what) {
    Token t = lex_.take();
    if (t.kind != kind) fail_at(t, "expected " + what);
    return t;
  }

  void expect_punct(const std::string& text) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::punct || t.text != text)
      fail_at(t, "expected '" + text + "'");
  }

  void expect_keyword(const std::string& text) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::ident || t.text != text)
      fail_at(t, "expected '" + text + "'");
  }

  std::string fresh_name() {
    Token t = expect(Token::Kind::ident, "a name");
    if (doc_.find_set(t.text) || doc_.find_map(t.text) || doc_.find_rel(t.text) ||
        doc_.find_fun(t.text) || doc_.find_cat(t.text) || doc_.find_space(t.text) ||
        doc_.find_modular(t.text))
      fail_at(t, "name '" + t.text + "' is already defined");
    return t.text;
  }

  const FiniteSet& resolve_set(const Token& t) {
    const FiniteSet* s = doc_.find_set(t.text);
    if (!s) fail_at(t, "undefined set '" + t.text + "'");
    return *s;
  }

  QValue parse_value() {
    Token t = lex_.peek();
    if (t.kind == Token::Kind::punct && t.text == "[") {
      lex_.take();
      std::vector<StepFunction::Jump> raw;
      if (lex_.peek().text == "]") {
        lex_.take();
      } else {
        while (true) {
          expect_punct("(");
          Token u = expect(Token::Kind::number, "a threshold");
          expect_punct(",");
          Token p = expect(Token::Kind::number, "a level");
          expect_punct(")");
          auto ur = parse_rat(u.text);
          auto pr = parse_rat(p.text);
          if (!ur) fail_at(u, "malformed threshold");
          if (!pr) fail_at(p, "malformed level");
          raw.push_back({std::move(*ur), std::move(*pr)});
          if (lex_.peek().text == ",") {
            lex_.take();
            continue;
          }
          break;
        }
        expect_punct("]");
      }
      if (doc_.quantale.family() != Family::delta)
        fail_at(t, "step function literal outside a delta quantale");
      try {
        return QValue::delta(doc_.quantale.tnorm(), StepFunction::normalized(std::move(raw)));
      } catch (const RangeError& e) {
        fail_at(t, e.what());
      }
    }
    Token v = lex_.take();
    if (v.kind != Token::Kind::number && v.kind != Token::Kind::ident)
      fail_at(v, "expected a value literal");
    auto parsed = parse_qvalue(doc_.quantale, v.text);
    if (!parsed)
      fail_at(v, "'" + v.text + "' is not a value of " + doc_.quantale.name());
    return *parsed;
  }

  std::vector<QValue> parse_matrix(int rows, int cols) {
    expect_punct("[");
    std::vector<QValue> entries;
    for (int i = 0; i < rows; i++) {
      for (int j = 0; j < cols; j++) {
        entries.push_back(parse_value());
        if (j + 1 < cols) expect_punct(",");
      }
      if (i + 1 < rows) expect_punct(";");
    }
    Token closing = lex_.take();
    if (closing.text != "]")
      fail_at(closing, "matrix shape mismatch: expected " + std::to_string(rows) + "x" +
                           std::to_string(cols) + " entries");
    return entries;
  }

  void parse_set() {
    std::string name = fresh_name();
    expect_punct("=");
    expect_punct("{");
    std::vector<std::string> elems;
    if (lex_.peek().text != "}") {
      while (true) {
        Token e = lex_.take();
        if (e.kind != Token::Kind::ident && e.kind != Token::Kind::number)
          fail_at(e, "expected an element label");
        elems.push_back(e.text);
        if (lex_.peek().text == ",") {
          lex_.take();
          continue;
        }
        break;
      }
    }
    Token closing = lex_.take();
    if (closing.text != "}") fail_at(closing, "expected '}'");
    try {
      doc_.sets.emplace_back(name, FiniteSet(name, std::move(elems)));
    } catch (const ShapeError& e) {
      fail_at(closing, e.what());
    }
  }

  void parse_map() {
    std::string name = fresh_name();
    expect_punct(":");
    Token src = expect(Token::Kind::ident, "a set name");
    expect_punct("->");
    Token dst = expect(Token::Kind::ident, "a set name");
    const FiniteSet& a = resolve_set(src);
    const FiniteSet& c = resolve_set(dst);
    expect_punct("=");
    expect_punct("{");
    std::vector<int> table(a.size(), -1);
    if (lex_.peek().text != "}") {
      while (true) {
        Token from = lex_.take();
        int i = a.index_of(from.text);
        if (i < 0) fail_at(from, "'" + from.text + "' is not in " + a.name());
        expect_punct(":");
        Token to = lex_.take();
        int jj = c.index_of(to.text);
        if (jj < 0) fail_at(to, "'" + to.text + "' is not in " + c.name());
        table[i] = jj;
        if (lex_.peek().text == ",") {
          lex_.take();
          continue;
        }
        break;
      }
    }
    Token closing = lex_.take();
    if (closing.text != "}") fail_at(closing, "expected '}'");
    for (int i = 0; i < a.size(); i++)
      if (table[i] < 0)
        fail_at(closing, "map " + name + " is not total: no image for " + a.label(i));
    doc_.maps.emplace_back(name, SetMap(a, c, std::move(table)));
  }

  void parse_rel() {
    std::string name = fresh_name();
    expect_punct(":");
    Token src = expect(Token::Kind::ident, "a set name");
    expect_punct("->");
    Token dst = expect(Token::Kind::ident, "a set name");
    const FiniteSet& a = resolve_set(src);
    const FiniteSet& b = resolve_set(dst);
    expect_punct("=");
    std::vector<QValue> entries = parse_matrix(a.size(), b.size());
    doc_.rels.emplace_back(name, VRel(doc_.quantale, a, b, std::move(entries)));
  }

  void parse_fun() {
    std::string name = fresh_name();
    expect_punct(":");
    Token src = expect(Token::Kind::ident, "a set name");
    const FiniteSet& a = resolve_set(src);
    expect_punct("=");
    expect_punct("{");
    std::vector<std::optional<QValue>> values(a.size());
    if (lex_.peek().text != "}") {
      while (true) {
        Token from = lex_.take();
        int i = a.index_of(from.text);
        if (i < 0) fail_at(from, "'" + from.text + "' is not in " + a.name());
        expect_punct(":");
        values[i] = parse_value();
        if (lex_.peek().text == ",") {
          lex_.take();
          continue;
        }
        break;
      }
    }
    Token closing = lex_.take();
    if (closing.text != "}") fail_at(closing, "expected '}'");
    InstanceDocument::FunBlock block;
    block.carrier = a.name();
    for (int i = 0; i < a.size(); i++) {
      if (!values[i]) fail_at(closing, "fun " + name + " has no value at " + a.label(i));
      block.values.push_back(std::move(*values[i]));
    }
    doc_.funs.emplace_back(name, std::move(block));
  }

  void parse_cat() {
    std::string name = fresh_name();
    expect_punct("=");
    expect_punct("(");
    Token carrier = expect(Token::Kind::ident, "a set name");
    const FiniteSet& a = resolve_set(carrier);
    expect_punct(",");
    Token hom = expect(Token::Kind::ident, "a relation name");
    const VRel* r = doc_.find_rel(hom.text);
    if (!r) fail_at(hom, "undefined relation '" + hom.text + "'");
    expect_punct(")");
    if (r->source() != a || r->target() != a)
      fail_at(hom, "hom must be a relation " + a.name() + " -> " + a.name());
    doc_.cats.emplace_back(name,
                           InstanceDocument::CatBlock{a.name(), hom.text, VCat{a, *r}});
  }

  void parse_space() {
    std::string name = fresh_name();
    expect_punct("=");
    Token kind = expect(Token::Kind::ident, "'closure' or 'convergence'");
    if (kind.text != "closure" && kind.text != "convergence")
      fail_at(kind, "space kind must be closure or convergence");
    Token carrier = expect(Token::Kind::ident, "a set name");
    const FiniteSet& a = resolve_set(carrier);

    bool closure_kind = kind.text == "closure";
    if (closure_kind) {
      int rows = 1 << a.size();
      std::vector<QValue> entries = parse_matrix(rows, a.size());
      PSpace p(a, VRel(doc_.quantale, powerset_set(a), a, std::move(entries)));
      doc_.spaces.emplace_back(
          name, InstanceDocument::SpaceBlock{true, a.name(), std::move(p)});
    } else {
      std::vector<QValue> entries = parse_matrix(a.size(), a.size());
      USpace u(a, VRel(doc_.quantale, a, a, std::move(entries)));
      doc_.spaces.emplace_back(
          name, InstanceDocument::SpaceBlock{false, a.name(), std::move(u)});
    }
  }

  void parse_modular() {
    std::string name = fresh_name();
    expect_punct("=");
    expect_punct("(");
    Token hom = expect(Token::Kind::ident, "a relation name");
    const VRel* r = doc_.find_rel(hom.text);
    if (!r) fail_at(hom, "undefined relation '" + hom.text + "'");
    expect_punct(",");
    Token space = expect(Token::Kind::ident, "a space name");
    const InstanceDocument::SpaceBlock* s = doc_.find_space(space.text);
    if (!s) fail_at(space, "undefined space '" + space.text + "'");
    expect_punct(")");

    const FiniteSet& carrier = s->closure ? std::get<PSpace>(s->space).carrier()
                                          : std::get<USpace>(s->space).carrier();
    if (r->source() != carrier || r->target() != carrier)
      fail_at(hom, "hom endpoints do not match the space carrier");
    ModularSpace value{VCat{carrier, *r}, s->space};
    doc_.modulars.emplace_back(
        name, InstanceDocument::ModularBlock{hom.text, space.text, std::move(value)});
  }

  void parse_query() {
    InstanceDocument::Query query;
    Token op = expect(Token::Kind::ident, "an operation name");
    query.op = op.text;
    query.line = op.line;
    query.col = op.col;
    while (lex_.peek().kind == Token::Kind::ident && lex_.peek2().text == "=") {
      Token key = lex_.take();
      lex_.take();  // '='
      Token value = lex_.take();
      if (value.kind != Token::Kind::ident && value.kind != Token::Kind::number)
        fail_at(value, "expected an argument value");
      query.args.emplace_back(key.text, value.text);
    }
    doc_.queries.push_back(std::move(query));
  }

  Lexer lex_;
  InstanceDocument doc_;
};

template <typename T>
const T* find_in(const std::vector<std::pair<std::string, T>>& xs, const std::string& name) {
  for (const auto& [n, v] : xs)
    if (n == name) return &v;
  return nullptr;
}

}  // namespace

const std::string* InstanceDocument::Query::find(const std::string& key) const {
  for (const auto& [k, v] : args)
    if (k == key) return &v;
  return nullptr;
}

const FiniteSet* InstanceDocument::find_set(const std::string& n) const {
  return find_in(sets, n);
}
const SetMap* InstanceDocument::find_map(const std::string& n) const {
  return find_in(maps, n);
}
const VRel* InstanceDocument::find_rel(const std::string& n) const { return find_in(rels, n); }
const InstanceDocument::FunBlock* InstanceDocument::find_fun(const std::string& n) const {
  return find_in(funs, n);
}
const InstanceDocument::CatBlock* InstanceDocument::find_cat(const std::string& n) const {
  return find_in(cats, n);
}
const InstanceDocument::SpaceBlock* InstanceDocument::find_space(const std::string& n) const {
  return find_in(spaces, n);
}
const InstanceDocument::ModularBlock* InstanceDocument::find_modular(
    const std::string& n) const {
  return find_in(modulars, n);
}

InstanceDocument parse_instance(const std::string& text) { return Parser(text).run(); }

namespace {

void print_matrix(std::ostringstream& os, const VRel& r) {
  os << "[";
  for (int i = 0; i < r.rows(); i++) {
    if (i) os << ";";
    os << "\n  ";
    for (int j = 0; j < r.cols(); j++) {
      if (j) os << ", ";
      os << to_string(r.at(i, j));
    }
  }
  os << " ]";
}

}  // namespace

std::string print_instance(const InstanceDocument& doc) {
  std::ostringstream os;
  os << "quantale " << doc.quantale.name() << "\n";
  for (const auto& [name, s] : doc.sets) {
    os << "set " << name << " = {";
    for (int i = 0; i < s.size(); i++) os << (i ? ", " : " ") << s.label(i);
    os << (s.size() ? " }" : "}") << "\n";
  }
  for (const auto& [name, m] : doc.maps) {
    os << "map " << name << " : " << m.source().name() << " -> " << m.target().name()
       << " = {";
    for (int i = 0; i < m.source().size(); i++)
      os << (i ? ", " : " ") << m.source().label(i) << ": " << m.target().label(m(i));
    os << (m.source().size() ? " }" : "}") << "\n";
  }
  for (const auto& [name, r] : doc.rels) {
    os << "rel " << name << " : " << r.source().name() << " -> " << r.target().name()
       << " = ";
    print_matrix(os, r);
    os << "\n";
  }
  for (const auto& [name, f] : doc.funs) {
    const FiniteSet* s = doc.find_set(f.carrier);
    os << "fun " << name << " : " << f.carrier << " = {";
    for (std::size_t i = 0; i < f.values.size(); i++)
      os << (i ? ", " : " ") << s->label(static_cast<int>(i)) << ": "
         << to_string(f.values[i]);
    os << (f.values.empty() ? "}" : " }") << "\n";
  }
  for (const auto& [name, c] : doc.cats)
    os << "cat " << name << " = (" << c.carrier << ", " << c.hom << ")\n";
  for (const auto& [name, s] : doc.spaces) {
    os << "space " << name << " = " << (s.closure ? "closure " : "convergence ")
       << s.carrier << " ";
    print_matrix(os, s.closure ? std::get<PSpace>(s.space).delta()
                               : std::get<USpace>(s.space).alpha());
    os << "\n";
  }
  for (const auto& [name, m] : doc.modulars)
    os << "modular " << name << " = (" << m.hom << ", " << m.space << ")\n";
  for (const auto& q : doc.queries) {
    os << "query " << q.op;
    for (const auto& [k, v] : q.args) os << " " << k << "=" << v;
    os << "\n";
  }
  return os.str();
}

namespace {

class DeltaExprParser {
 public:
  DeltaExprParser(TNorm t, const std::string& text) : tnorm_(t), text_(text) {}

  StepFunction run() {
    StepFunction out = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, 1, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      pos_++;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      pos_++;
      return true;
    }
    return false;
  }

  Rat number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
      pos_++;
    auto r = parse_rat(text_.substr(start, pos_ - start));
    if (!r) fail("malformed rational");
    return *r;
  }

  StepFunction expr() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected an expression");
    if (text_[pos_] == '[') {
      pos_++;
      std::vector<StepFunction::Jump> raw;
      skip_ws();
      if (eat(']')) return StepFunction();
      while (true) {
        if (!eat('(')) fail("expected '('");
        Rat u = number();
        if (!eat(',')) fail("expected ','");
        Rat p = number();
        if (!eat(')')) fail("expected ')'");
        raw.push_back({std::move(u), std::move(p)});
        if (eat(',')) continue;
        break;
      }
      if (!eat(']')) fail("expected ']'");
      return StepFunction::normalized(std::move(raw));
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      pos_++;
    std::string head = text_.substr(start, pos_ - start);
    if (head == "bot") return StepFunction();
    if (head == "k") return StepFunction::one();
    if (head.empty()) fail("expected an expression");
    if (!eat('(')) fail("expected '(' after " + head);
    StepFunction a = expr();
    if (!eat(',')) fail("expected ','");
    StepFunction b = expr();
    if (!eat(')')) fail("expected ')'");
    if (head == "tensor") return sf_convolve(tnorm_, a, b);
    if (head == "join") return sf_sup(a, b);
    if (head == "meet") return sf_inf(a, b);
    if (head == "lhom") return sf_residuate(tnorm_, a, b);
    if (head == "rhom") return sf_residuate(tnorm_, b, a);  // commutative
    fail("unknown operation '" + head + "'");
  }

  TNorm tnorm_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

StepFunction eval_delta_expression(TNorm t, const std::string& text) {
  return DeltaExprParser(t, text).run();
}

}  // namespace qrel

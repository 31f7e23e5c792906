#include "stringtop/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace stringtop {

std::string to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::Sullivan: return "sullivan";
    case AlgebraKind::FinitePd: return "finite-pd";
    case AlgebraKind::BG: return "bg";
  }
  return "?";
}

namespace {

struct Line {
  int number = 0;
  int key_column = 0;
  int value_column = 0;
  std::string key;
  std::string value;
};

struct Factor {
  std::string name;
  int exponent = 1;
  int column = 0;
};

struct ParsedTerm {
  Rational coefficient = 1;
  std::vector<Factor> factors;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

bool is_identifier(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

class PolynomialLexer {
 public:
  PolynomialLexer(const std::string& source, const Line& line) : source_(source), line_(line), text_(line.value) {}

  std::vector<ParsedTerm> parse() {
    std::vector<ParsedTerm> terms;
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      ParsedTerm t = term();
      t.coefficient *= sign;
      terms.push_back(std::move(t));
      first = false;
      skip_space();
    }
    return terms;
  }

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw ParseError(source_, line_.number, line_.value_column + static_cast<int>(at), what);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  ParsedTerm term() {
    ParsedTerm t;
    bool any = false;
    while (true) {
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.coefficient *= number();
      } else if (ident_start(c)) {
        t.factors.push_back(factor());
      } else {
        break;
      }
      any = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
        if (at_end() || !(std::isdigit(static_cast<unsigned char>(peek())) || ident_start(peek())))
          fail("expected a factor after '*'");
      }
    }
    if (!any) fail(at_end() ? "expected a term" : std::string("unexpected character '") + peek() + "'");
    return t;
  }

  Rational number() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string s = text_.substr(start, pos_ - start);
    if (!at_end() && peek() == '/') {
      ++pos_;
      const std::size_t d = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (d == pos_) fail("expected a denominator");
      const std::string den = text_.substr(d, pos_ - d);
      if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator", d);
      s += "/" + den;
    }
    Rational q(s);
    q.canonicalize();
    return q;
  }

  Factor factor() {
    Factor f;
    f.column = line_.value_column + static_cast<int>(pos_);
    const std::size_t start = pos_;
    while (!at_end() && ident_char(peek())) ++pos_;
    f.name = text_.substr(start, pos_ - start);
    skip_space();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t d = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (d == pos_) fail("expected an exponent after '^'");
      f.exponent = std::stoi(text_.substr(d, pos_ - d));
    }
    return f;
  }

  const std::string& source_;
  const Line& line_;
  std::string text_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s, int* offset = nullptr) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (offset) *offset = static_cast<int>(b);
  return s.substr(b, e - b);
}

struct Document {
  std::map<std::string, Line> top;
  std::map<std::string, std::vector<Line>> sections;
};

const std::set<std::string> kTopKeys{"kind", "name", "dimension", "degrees", "truncation"};
const std::set<std::string> kSections{"generators", "differential", "basis", "products", "fundamental"};

Document split(std::string_view text, const std::string& source) {
  Document doc;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    int lead = 0;
    const std::string body = trim(raw, &lead);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError(source, number, lead + static_cast<int>(body.size()), "expected ']'");
      current = trim(body.substr(1, body.size() - 2));
      if (!kSections.count(current)) throw ParseError(source, number, lead + 2, "unknown section [" + current + "]");
      if (doc.sections.count(current)) throw ParseError(source, number, lead + 1, "duplicate section [" + current + "]");
      doc.sections[current];
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError(source, number, lead + 1, "expected 'key = value'");
    Line line;
    line.number = number;
    int koff = 0, voff = 0;
    line.key = trim(raw.substr(0, eq), &koff);
    line.value = trim(raw.substr(eq + 1), &voff);
    line.key_column = koff + 1;
    line.value_column = static_cast<int>(eq) + 2 + voff;
    if (line.key.empty()) throw ParseError(source, number, line.key_column, "missing key");
    if (line.value.empty()) throw ParseError(source, number, static_cast<int>(eq) + 2, "missing value");
    if (current.empty()) {
      if (!kTopKeys.count(line.key)) throw ParseError(source, number, line.key_column, "unknown key '" + line.key + "'");
      if (doc.top.count(line.key)) throw ParseError(source, number, line.key_column, "duplicate key '" + line.key + "'");
      doc.top[line.key] = line;
    } else {
      for (const auto& other : doc.sections[current])
        if (other.key == line.key)
          throw ParseError(source, number, line.key_column, "duplicate entry '" + line.key + "' in [" + current + "]");
      doc.sections[current].push_back(line);
    }
  }
  return doc;
}

int parse_int(const std::string& source, const Line& line, const std::string& text, int column) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ParseError(source, line.number, column, "expected an integer, got '" + text + "'");
  return v;
}

int parse_int(const std::string& source, const Line& line) { return parse_int(source, line, line.value, line.value_column); }

const Line& require_key(const Document& doc, const std::string& key, const std::string& source) {
  auto it = doc.top.find(key);
  if (it == doc.top.end()) throw ParseError(source, 1, 1, "missing key '" + key + "'");
  return it->second;
}

void forbid(const Document& doc, const std::vector<std::string>& sections, const std::vector<std::string>& keys,
            const std::string& kind, const std::string& source) {
  for (const auto& s : sections)
    if (doc.sections.count(s)) throw ParseError(source, 1, 1, "section [" + s + "] is not allowed for kind " + kind);
  for (const auto& k : keys)
    if (auto it = doc.top.find(k); it != doc.top.end())
      throw ParseError(source, it->second.number, it->second.key_column, "key '" + k + "' is not allowed for kind " + kind);
}

const std::vector<Line>& section(const Document& doc, const std::string& name) {
  static const std::vector<Line> empty;
  auto it = doc.sections.find(name);
  return it == doc.sections.end() ? empty : it->second;
}

FreeCdga parse_sullivan(const Document& doc, const std::string& source) {
  std::vector<Generator> gens;
  for (const auto& line : section(doc, "generators")) {
    if (!is_identifier(line.key))
      throw ParseError(source, line.number, line.key_column, "generator name '" + line.key + "' is not an identifier");
    gens.push_back({line.key, parse_int(source, line)});
  }
  const FreeCdga scratch(gens, {});
  std::vector<Element> diff(gens.size());
  std::vector<bool> seen(gens.size(), false);
  for (const auto& line : section(doc, "differential")) {
    const long g = scratch.generator_index(line.key);
    if (g < 0) throw ParseError(source, line.number, line.key_column, "d of unknown generator '" + line.key + "'");
    PolynomialLexer lex(source, line);
    Element value;
    for (const auto& t : lex.parse()) {
      Element term = scratch.scalar(t.coefficient);
      for (const auto& f : t.factors) {
        if (scratch.generator_index(f.name) < 0)
          throw ParseError(source, line.number, f.column, "unknown generator '" + f.name + "'");
        term = scratch.multiply(term, scratch.power(scratch.generator(f.name), f.exponent));
      }
      value += term;
    }
    diff[static_cast<std::size_t>(g)] = value;
    seen[static_cast<std::size_t>(g)] = true;
  }
  FreeCdga model(gens, diff);
  int top = 2;
  for (const auto& g : gens) top = std::max(top, 2 * g.degree + 2);
  const auto v = check_cdga(model, top);
  if (!v.pass) throw ValidationError(v.message);
  return model;
}

FinitePdAlgebra parse_finite(const Document& doc, const std::string& source) {
  std::vector<FiniteBasisElement> basis;
  for (const auto& line : section(doc, "basis")) {
    const bool unit = basis.empty();
    if (!(is_identifier(line.key) || (unit && line.key == "1")))
      throw ParseError(source, line.number, line.key_column, "basis label '" + line.key + "' is not an identifier");
    basis.push_back({line.key, parse_int(source, line)});
  }
  if (basis.empty()) throw ParseError(source, 1, 1, "missing [basis] section");
  if (basis.front().degree != 0) throw ValidationError("the first basis element is the unit and must have degree 0");
  auto index = [&](const std::string& label) -> long {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].label == label) return static_cast<long>(i);
    return -1;
  };
  auto linear = [&](const Line& line) {
    PolynomialLexer lex(source, line);
    FiniteElement out;
    for (const auto& t : lex.parse()) {
      if (t.factors.size() > 1 || (t.factors.size() == 1 && t.factors[0].exponent != 1))
        lex.fail("values must be linear combinations of basis labels", t.factors[0].column - line.value_column);
      if (t.factors.empty()) {
        out.add(0, t.coefficient);
        continue;
      }
      const long i = index(t.factors[0].name);
      if (i < 0) throw ParseError(source, line.number, t.factors[0].column, "unknown basis label '" + t.factors[0].name + "'");
      out.add(static_cast<std::size_t>(i), t.coefficient);
    }
    return out;
  };

  FiniteCdga::ProductTable products;
  for (const auto& line : section(doc, "products")) {
    const auto star = line.key.find('*');
    if (star == std::string::npos)
      throw ParseError(source, line.number, line.key_column, "expected 'a*b = value' in [products]");
    const std::string l = trim(line.key.substr(0, star)), r = trim(line.key.substr(star + 1));
    const long i = index(l), j = index(r);
    if (i < 0) throw ParseError(source, line.number, line.key_column, "unknown basis label '" + l + "'");
    if (j < 0)
      throw ParseError(source, line.number, line.key_column + static_cast<int>(star) + 1, "unknown basis label '" + r + "'");
    if (i == 0 || j == 0) throw ParseError(source, line.number, line.key_column, "products with the unit are implied");
    const auto key = std::make_pair(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    if (products.count(key) || products.count({key.second, key.first}))
      throw ParseError(source, line.number, line.key_column, "product " + l + "*" + r + " given twice");
    products[key] = linear(line);
  }
  std::vector<FiniteElement> diff(basis.size());
  for (const auto& line : section(doc, "differential")) {
    const long i = index(line.key);
    if (i < 0) throw ParseError(source, line.number, line.key_column, "d of unknown basis label '" + line.key + "'");
    diff[static_cast<std::size_t>(i)] = linear(line);
  }
  FiniteCdga algebra(basis, products, diff);
  if (auto defect = algebra.structure_defect()) throw ValidationError("inconsistent multiplication table: " + *defect);

  const auto& fund = section(doc, "fundamental");
  if (fund.size() != 1 || fund[0].key != "omega") throw ParseError(source, 1, 1, "[fundamental] must contain exactly 'omega = label'");
  const int m = parse_int(source, require_key(doc, "dimension", source));
  if (index(fund[0].value) < 0)
    throw ParseError(source, fund[0].number, fund[0].value_column, "unknown basis label '" + fund[0].value + "'");
  return FinitePdAlgebra::make(algebra, m, fund[0].value);
}

BGPresentation parse_bg(const Document& doc, const std::string& source) {
  const Line& line = require_key(doc, "degrees", source);
  BGPresentation g;
  std::size_t start = 0;
  while (start <= line.value.size()) {
    const auto comma = line.value.find(',', start);
    const std::string piece = line.value.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    int off = 0;
    const std::string item = trim(piece, &off);
    g.degrees.push_back(parse_int(source, line, item, line.value_column + static_cast<int>(start) + off));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  g.validate();
  return g;
}

std::string coefficient_prefix(const Rational& c, bool first, const std::string& body) {
  std::string out;
  if (sgn(c) < 0)
    out += first ? "-" : " - ";
  else if (!first)
    out += " + ";
  const Rational a = abs(c);
  if (body.empty() || body == "1") return out + a.get_str();
  if (a == 1) return out + body;
  return out + a.get_str() + "*" + body;
}

}  // namespace

AlgebraFile parse_algebra(std::string_view text, const std::string& source) {
  const Document doc = split(text, source);
  AlgebraFile f;
  const Line& kind = require_key(doc, "kind", source);
  if (kind.value == "sullivan") {
    f.kind = AlgebraKind::Sullivan;
  } else if (kind.value == "finite-pd") {
    f.kind = AlgebraKind::FinitePd;
  } else if (kind.value == "bg") {
    f.kind = AlgebraKind::BG;
  } else {
    throw ParseError(source, kind.number, kind.value_column, "kind must be sullivan, finite-pd or bg");
  }
  if (auto it = doc.top.find("name"); it != doc.top.end()) f.name = it->second.value;
  if (auto it = doc.top.find("truncation"); it != doc.top.end()) {
    f.truncation = parse_int(source, it->second);
    if (*f.truncation < 0) throw ParseError(source, it->second.number, it->second.value_column, "truncation must be >= 0");
  }
  switch (f.kind) {
    case AlgebraKind::Sullivan:
      forbid(doc, {"basis", "products", "fundamental"}, {"dimension", "degrees"}, kind.value, source);
      f.sullivan = parse_sullivan(doc, source);
      break;
    case AlgebraKind::FinitePd:
      forbid(doc, {"generators"}, {"degrees"}, kind.value, source);
      f.pd = parse_finite(doc, source);
      break;
    case AlgebraKind::BG:
      forbid(doc, {"generators", "differential", "basis", "products", "fundamental"}, {"dimension"}, kind.value, source);
      f.bg = parse_bg(doc, source);
      break;
  }
  return f;
}

AlgebraFile load_algebra(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_algebra(buf.str(), path.string());
}

std::string format_polynomial(const FreeCdga& a, const Element& x) {
  if (!a.base().is_ground()) throw Error("format_polynomial needs a free algebra over Q");
  if (x.empty()) return "0";
  // descending monomial order, as in monomial_basis
  std::vector<std::pair<Term, Rational>> terms(x.begin(), x.end());
  std::string out;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    out += coefficient_prefix(it->second, first, a.label(it->first.monomial));
    first = false;
  }
  return out;
}

std::string format_linear(const FiniteCdga& a, const FiniteElement& x) {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [i, c] : x) {
    out += coefficient_prefix(c, first, a.label(i));
    first = false;
  }
  return out;
}

std::string serialize(const AlgebraFile& f) {
  std::ostringstream out;
  out << "kind = " << to_string(f.kind) << "\n";
  if (!f.name.empty()) out << "name = " << f.name << "\n";
  if (f.truncation) out << "truncation = " << *f.truncation << "\n";
  switch (f.kind) {
    case AlgebraKind::Sullivan: {
      const auto& a = *f.sullivan;
      out << "\n[generators]\n";
      for (const auto& g : a.generators()) out << g.name << " = " << g.degree << "\n";
      if (!a.has_zero_differential()) {
        out << "\n[differential]\n";
        for (std::size_t i = 0; i < a.generator_count(); ++i)
          if (!a.differential()[i].empty())
            out << a.generators()[i].name << " = " << format_polynomial(a, a.differential()[i]) << "\n";
      }
      break;
    }
    case AlgebraKind::FinitePd: {
      const auto& pd = *f.pd;
      const auto& a = pd.algebra;
      out << "dimension = " << pd.dimension << "\n\n[basis]\n";
      for (const auto& b : a.basis()) out << b.label << " = " << b.degree << "\n";
      std::ostringstream products;
      for (std::size_t i = 1; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
          if (!a.multiply(i, j).empty())
            products << a.label(i) << "*" << a.label(j) << " = " << format_linear(a, a.multiply(i, j)) << "\n";
      if (!products.str().empty()) out << "\n[products]\n" << products.str();
      if (!a.has_zero_differential()) {
        out << "\n[differential]\n";
        for (std::size_t i = 0; i < a.dim(); ++i)
          if (!a.d(i).empty()) out << a.label(i) << " = " << format_linear(a, a.d(i)) << "\n";
      }
      out << "\n[fundamental]\nomega = " << a.label(pd.fundamental) << "\n";
      break;
    }
    case AlgebraKind::BG: {
      out << "degrees = ";
      for (std::size_t i = 0; i < f.bg->degrees.size(); ++i) out << (i ? ", " : "") << f.bg->degrees[i];
      out << "\n";
      break;
    }
  }
  return out.str();
}

bool same_presentation(const AlgebraFile& a, const AlgebraFile& b) {
  if (a.kind != b.kind || a.name != b.name || a.truncation != b.truncation) return false;
  switch (a.kind) {
    case AlgebraKind::Sullivan: {
      const auto& x = *a.sullivan;
      const auto& y = *b.sullivan;
      if (x.generator_count() != y.generator_count()) return false;
      for (std::size_t i = 0; i < x.generator_count(); ++i)
        if (x.generators()[i].name != y.generators()[i].name || x.generators()[i].degree != y.generators()[i].degree ||
            x.differential()[i] != y.differential()[i])
          return false;
      return true;
    }
    case AlgebraKind::FinitePd: {
      const auto& x = *a.pd;
      const auto& y = *b.pd;
      if (x.dimension != y.dimension || x.fundamental != y.fundamental || x.algebra.dim() != y.algebra.dim()) return false;
      for (std::size_t i = 0; i < x.algebra.dim(); ++i) {
        if (x.algebra.label(i) != y.algebra.label(i) || x.algebra.degree(i) != y.algebra.degree(i)) return false;
        if (x.algebra.d(i) != y.algebra.d(i)) return false;
        for (std::size_t j = 0; j < x.algebra.dim(); ++j)
          if (x.algebra.multiply(i, j) != y.algebra.multiply(i, j)) return false;
      }
      return true;
    }
    case AlgebraKind::BG: return a.bg->degrees == b.bg->degrees;
  }
  return false;
}

FreeCdga bg_model(const BGPresentation& g) {
  g.validate();
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < g.rank(); ++i)
    gens.push_back({g.rank() == 1 ? std::string("x") : "x" + std::to_string(i + 1), g.degrees[i]});
  return FreeCdga(gens, {});
}

}  // namespace stringtop

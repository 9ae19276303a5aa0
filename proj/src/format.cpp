#include "cvpa/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace cvpa {

ParseError::ParseError(std::string source, int line, int column, std::string message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

SpaceRef StructureFile::find_space(std::string_view name) const {
  for (const auto& s : spaces)
    if (s->name == name) return s;
  return nullptr;
}

const BilinearMap* StructureFile::find_product(std::string_view name) const {
  for (const auto& [n, p] : products)
    if (n == name) return &p;
  return nullptr;
}

const LinearMap* StructureFile::find_map(std::string_view name) const {
  for (const auto& [n, m] : maps)
    if (n == name) return &m;
  return nullptr;
}

std::optional<std::string> StructureFile::find_meta(std::string_view key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return std::nullopt;
}

namespace {

struct Tok {
  std::string text;
  int col;
};

std::vector<Tok> tokenize(const std::string& line) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

bool is_rational(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool digits = false, slash = false, after = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      (slash ? after : digits) = true;
    } else if (s[i] == '/' && !slash && digits) {
      slash = true;
    } else {
      return false;
    }
  }
  return digits && (!slash || after);
}

bool is_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

bool is_index(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string label_problem(std::string_view label) {
  if (label.empty()) return "empty basis label";
  if (label[0] == '-' || label[0] == '+') return "basis label may not start with a sign";
  if (label.find_first_of(",#") != std::string_view::npos) return "basis label may not contain ',' or '#'";
  if (is_rational(label)) return "basis label may not be a number";
  const auto star = label.find('*');
  if (star != std::string_view::npos && is_rational(label.substr(0, star)))
    return "basis label may not start with a coefficient";
  return {};
}

class Parser {
 public:
  Parser(std::string_view text, std::string source) : source_(std::move(source)) {
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      lines_.push_back(line);
    }
    file_.source = source_;
  }

  StructureFile run() {
    while (next_line()) {
      const Tok& head = toks_[0];
      if (head.text == "META")
        meta();
      else if (head.text == "SPACE")
        space();
      else if (head.text == "PRODUCT")
        product();
      else if (head.text == "MAP")
        map();
      else if (head.text == "STRUCTURE")
        structure();
      else
        fail(head.col, "unknown section '" + head.text + "'");
    }
    return std::move(file_);
  }

 private:
  [[noreturn]] void fail(int col, const std::string& msg) const { throw ParseError(source_, line_no_, col, msg); }

  bool next_line() {
    while (pos_ < lines_.size()) {
      line_no_ = static_cast<int>(++pos_);
      toks_ = tokenize(lines_[pos_ - 1]);
      if (!toks_.empty()) return true;
    }
    return false;
  }

  // Next non-blank line inside a block; false at END.
  bool block_line(int header_line, const char* what) {
    if (!next_line()) {
      line_no_ = header_line;
      fail(0, std::string("unterminated ") + what + " (missing END)");
    }
    if (toks_[0].text == "END") {
      if (toks_.size() > 1) fail(toks_[1].col, "unexpected text after END");
      return false;
    }
    return true;
  }

  void check_name(const Tok& t) const {
    if (!is_name(t.text)) fail(t.col, "invalid name '" + t.text + "'");
  }

  SpaceRef space_ref(const Tok& t) const {
    SpaceRef s = file_.find_space(t.text);
    if (!s) fail(t.col, "undefined space '" + t.text + "'");
    return s;
  }

  Scalar coefficient(const std::string& text, int col) const {
    try {
      return Scalar::parse(text);
    } catch (const std::domain_error&) {
      fail(col, "zero denominator in coefficient '" + text + "'");
    } catch (const std::invalid_argument&) {
      fail(col, "malformed coefficient '" + text + "'");
    }
  }

  std::size_t basis_index(const BasedSpace& s, const std::string& key, int col) const {
    if (auto i = s.index_of(key)) return *i;
    if (is_index(key)) {
      const std::size_t i = std::stoul(key);
      if (i >= s.dim())
        fail(col, "index " + key + " out of range for space " + s.name + " of dimension " + std::to_string(s.dim()));
      return i;
    }
    fail(col, "unknown basis label '" + key + "' in space " + s.name);
  }

  SparseVec expression(std::size_t from, const BasedSpace& s) const {
    if (from >= toks_.size()) fail(0, "missing expression");
    SparseVec out;
    if (toks_.size() == from + 1 && toks_[from].text == "0") return out;
    Scalar sign = 1;
    bool want_term = true;
    for (std::size_t k = from; k < toks_.size(); ++k) {
      const Tok& t = toks_[k];
      if (!want_term) {
        if (t.text != "+" && t.text != "-") fail(t.col, "expected '+' or '-' before '" + t.text + "'");
        sign = t.text == "-" ? Scalar(-1) : Scalar(1);
        want_term = true;
        continue;
      }
      std::string body = t.text;
      Scalar c = sign;
      if (!body.empty() && body[0] == '-' && !is_rational(body.substr(0, body.find('*')))) {
        c = -c;
        body.erase(0, 1);
      }
      std::string label = body;
      const auto star = body.find('*');
      if (star != std::string::npos && is_rational(body.substr(0, star))) {
        c *= coefficient(body.substr(0, star), t.col);
        label = body.substr(star + 1);
      }
      if (is_rational(label)) fail(t.col, "term '" + t.text + "' has no basis label");
      auto idx = s.index_of(label);
      if (!idx) fail(t.col, "unknown basis label '" + label + "' in space " + s.name);
      out.add_term(static_cast<std::uint32_t>(*idx), c);
      want_term = false;
    }
    if (want_term) fail(toks_.back().col, "dangling operator");
    return out;
  }

  // "(a,b) -> expr": returns the key components and the index of the first
  // expression token.
  std::pair<std::vector<Tok>, std::size_t> entry_key() const {
    std::size_t arrow = 0;
    while (arrow < toks_.size() && toks_[arrow].text != "->") ++arrow;
    if (arrow == toks_.size()) fail(toks_[0].col, "expected '(...) -> expression'");
    std::string key;
    for (std::size_t k = 0; k < arrow; ++k) key += toks_[k].text;
    const int col = toks_[0].col;
    if (key.size() < 2 || key.front() != '(' || key.back() != ')') fail(col, "entry key must be parenthesized");
    key = key.substr(1, key.size() - 2);
    std::vector<Tok> parts;
    std::size_t start = 0;
    while (true) {
      const auto comma = key.find(',', start);
      parts.push_back({key.substr(start, comma - start), col});
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return {parts, arrow + 1};
  }

  void meta() {
    if (toks_.size() < 2) fail(0, "META needs a key");
    std::string value;
    for (std::size_t k = 2; k < toks_.size(); ++k) value += (k > 2 ? " " : "") + toks_[k].text;
    file_.meta.emplace_back(toks_[1].text, value);
  }

  void space() {
    if (toks_.size() < 3 || toks_[2].text != ":") fail(0, "expected 'SPACE name : label...'");
    check_name(toks_[1]);
    if (file_.find_space(toks_[1].text)) fail(toks_[1].col, "space '" + toks_[1].text + "' defined twice");
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (std::size_t k = 3; k < toks_.size(); ++k) {
      const auto problem = label_problem(toks_[k].text);
      if (!problem.empty()) fail(toks_[k].col, problem + ": '" + toks_[k].text + "'");
      if (!seen.insert(toks_[k].text).second) fail(toks_[k].col, "duplicate basis label '" + toks_[k].text + "'");
      labels.push_back(toks_[k].text);
    }
    file_.spaces.push_back(make_space(toks_[1].text, std::move(labels)));
  }

  void product() {
    if (toks_.size() < 6 || toks_.size() > 7 || toks_[4].text != "->")
      fail(0, "expected 'PRODUCT name left right -> codomain [symmetric|antisymmetric]'");
    check_name(toks_[1]);
    if (file_.find_product(toks_[1].text)) fail(toks_[1].col, "product '" + toks_[1].text + "' defined twice");
    Symmetry flag = Symmetry::none;
    if (toks_.size() == 7) {
      if (toks_[6].text == "symmetric")
        flag = Symmetry::symmetric;
      else if (toks_[6].text == "antisymmetric")
        flag = Symmetry::antisymmetric;
      else
        fail(toks_[6].col, "unknown flag '" + toks_[6].text + "'");
    }
    const SpaceRef l = space_ref(toks_[2]), r = space_ref(toks_[3]), c = space_ref(toks_[5]);
    if (flag != Symmetry::none && !same_space(l, r)) fail(toks_[6].col, "symmetry flag needs equal left and right spaces");
    const std::string name = toks_[1].text;
    const int header = line_no_;
    BilinearMap m(l, r, c, flag);
    std::vector<char> given(l->dim() * r->dim(), 0);
    while (block_line(header, "PRODUCT")) {
      auto [key, from] = entry_key();
      if (key.size() != 2) fail(key[0].col, "product entry key needs two components");
      const std::size_t i = basis_index(*l, key[0].text, key[0].col);
      const std::size_t j = basis_index(*r, key[1].text, key[1].col);
      if (given[i * r->dim() + j]) fail(key[0].col, "entry (" + key[0].text + "," + key[1].text + ") given twice");
      given[i * r->dim() + j] = 1;
      m.set(i, j, expression(from, *c));
    }
    if (flag != Symmetry::none)
      for (std::size_t i = 0; i < l->dim(); ++i)
        for (std::size_t j = 0; j < r->dim(); ++j)
          if (given[i * r->dim() + j] && !given[j * r->dim() + i])
            m.set(j, i, flag == Symmetry::symmetric ? m.at(i, j) : m.at(i, j).scaled(-1));
    file_.products.emplace_back(name, std::move(m));
  }

  void map() {
    if (toks_.size() != 5 || toks_[3].text != "->") fail(0, "expected 'MAP name domain -> codomain'");
    check_name(toks_[1]);
    if (file_.find_map(toks_[1].text)) fail(toks_[1].col, "map '" + toks_[1].text + "' defined twice");
    const SpaceRef d = space_ref(toks_[2]), c = space_ref(toks_[4]);
    const std::string name = toks_[1].text;
    const int header = line_no_;
    LinearMap m(d, c);
    std::vector<char> given(d->dim(), 0);
    while (block_line(header, "MAP")) {
      auto [key, from] = entry_key();
      if (key.size() != 1) fail(key[0].col, "map entry key needs one component");
      const std::size_t i = basis_index(*d, key[0].text, key[0].col);
      if (given[i]) fail(key[0].col, "entry (" + key[0].text + ") given twice");
      given[i] = 1;
      m.set_column(i, expression(from, *c));
    }
    file_.maps.emplace_back(name, std::move(m));
  }

  void structure() {
    if (file_.structure) fail(toks_[0].col, "second STRUCTURE section");
    if (toks_.size() != 2) fail(0, "expected 'STRUCTURE courant|1tca|graded-vpa'");
    const std::string kind = toks_[1].text;
    if (kind != "courant" && kind != "1tca" && kind != "graded-vpa") fail(toks_[1].col, "unknown structure kind '" + kind + "'");
    StructureSection sec{kind, {}, line_no_};
    std::set<std::string> keys;
    while (block_line(sec.line, "STRUCTURE")) {
      std::size_t eq = 0;
      while (eq < toks_.size() && toks_[eq].text != "=") ++eq;
      if (eq == 0 || eq == toks_.size() || eq + 1 == toks_.size()) fail(toks_[0].col, "expected 'key = value'");
      Binding b;
      for (std::size_t k = 0; k < eq; ++k) b.key += (k ? " " : "") + toks_[k].text;
      for (std::size_t k = eq + 1; k < toks_.size(); ++k) b.value += (k > eq + 1 ? " " : "") + toks_[k].text;
      b.line = line_no_;
      b.column = toks_[eq + 1].col;
      if (!keys.insert(b.key).second) fail(toks_[0].col, "binding '" + b.key + "' given twice");
      sec.bindings.push_back(std::move(b));
    }
    file_.structure = std::move(sec);
  }

  std::string source_;
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
  std::vector<Tok> toks_;
  StructureFile file_;
};

std::string flag_text(Symmetry s) {
  switch (s) {
    case Symmetry::symmetric:
      return " symmetric";
    case Symmetry::antisymmetric:
      return " antisymmetric";
    case Symmetry::none:
      break;
  }
  return "";
}

}  // namespace

StructureFile parse(std::string_view text, std::string source) { return Parser(text, std::move(source)).run(); }

StructureFile parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

std::string print(const StructureFile& f) {
  std::ostringstream out;
  for (const auto& [k, v] : f.meta) out << "META " << k << (v.empty() ? "" : " " + v) << "\n";
  if (!f.meta.empty()) out << "\n";
  for (const auto& s : f.spaces) {
    out << "SPACE " << s->name << " :";
    for (const auto& l : s->basis) out << " " << l;
    out << "\n";
  }
  for (const auto& [name, m] : f.products) {
    out << "\nPRODUCT " << name << " " << m.left()->name << " " << m.right()->name << " -> " << m.codomain()->name
        << flag_text(m.symmetry()) << "\n";
    for (std::size_t i = 0; i < m.left()->dim(); ++i)
      for (std::size_t j = 0; j < m.right()->dim(); ++j)
        if (!m.at(i, j).empty())
          out << "  (" << m.left()->basis[i] << "," << m.right()->basis[j] << ") -> " << render(m.at(i, j), *m.codomain())
              << "\n";
    out << "END\n";
  }
  for (const auto& [name, m] : f.maps) {
    out << "\nMAP " << name << " " << m.domain()->name << " -> " << m.codomain()->name << "\n";
    for (std::size_t i = 0; i < m.domain()->dim(); ++i)
      if (!m.column(i).empty())
        out << "  (" << m.domain()->basis[i] << ") -> " << render(m.column(i), *m.codomain()) << "\n";
    out << "END\n";
  }
  if (f.structure) {
    out << "\nSTRUCTURE " << f.structure->kind << "\n";
    for (const auto& b : f.structure->bindings) out << "  " << b.key << " = " << b.value << "\n";
    out << "END\n";
  }
  return out.str();
}

namespace {

void add_space(StructureFile& f, const SpaceRef& s) {
  if (auto have = f.find_space(s->name)) {
    if (*have != *s) throw std::invalid_argument("two different spaces named '" + s->name + "'");
    return;
  }
  for (const auto& l : s->basis)
    if (auto problem = label_problem(l); !problem.empty())
      throw std::invalid_argument(problem + ": '" + l + "' in space " + s->name);
  f.spaces.push_back(s);
}

void add_product(StructureFile& f, const std::string& name, const BilinearMap& m) {
  add_space(f, m.left());
  add_space(f, m.right());
  add_space(f, m.codomain());
  f.products.emplace_back(name, m);
}

void add_map(StructureFile& f, const std::string& name, const LinearMap& m) {
  add_space(f, m.domain());
  add_space(f, m.codomain());
  f.maps.emplace_back(name, m);
}

void add_binding(StructureSection& s, std::string key, std::string value) {
  s.bindings.push_back(Binding{std::move(key), std::move(value), 0, 0});
}

// Binding lookup with positioned errors.
class Resolver {
 public:
  Resolver(const StructureFile& f, const char* kind, std::set<std::string> allowed_prefixes)
      : f_(f) {
    if (!f.structure) throw ParseError(f.source, 0, 0, "no STRUCTURE section");
    sec_ = &*f.structure;
    if (sec_->kind != kind)
      throw ParseError(f.source, sec_->line, 0, "STRUCTURE is " + sec_->kind + ", expected " + kind);
    for (const auto& b : sec_->bindings) {
      const std::string head = b.key.substr(0, b.key.find(' '));
      if (!allowed_prefixes.count(head)) throw ParseError(f.source, b.line, 0, "unknown binding '" + b.key + "'");
    }
  }

  const Binding* find(const std::string& key) const {
    for (const auto& b : sec_->bindings)
      if (b.key == key) return &b;
    return nullptr;
  }
  const Binding& need(const std::string& key) const {
    if (auto b = find(key)) return *b;
    throw ParseError(f_.source, sec_->line, 0, "missing binding '" + key + "'");
  }
  [[noreturn]] void fail(const Binding& b, const std::string& msg) const {
    throw ParseError(f_.source, b.line, b.column, msg);
  }

  SpaceRef space(const std::string& key) const {
    const Binding& b = need(key);
    SpaceRef s = f_.find_space(b.value);
    if (!s) fail(b, "undefined space '" + b.value + "'");
    return s;
  }

  BilinearMap product(const std::string& key, const SpaceRef& l, const SpaceRef& r, const SpaceRef& c,
                      Symmetry flag = Symmetry::none) const {
    const Binding& b = need(key);
    if (b.value == "0") return BilinearMap(l, r, c, flag);
    const BilinearMap* m = f_.find_product(b.value);
    if (!m) fail(b, "undefined product '" + b.value + "'");
    if (!same_space(m->left(), l) || !same_space(m->right(), r) || !same_space(m->codomain(), c))
      fail(b, "dimension mismatch: '" + b.value + "' is " + m->left()->name + " x " + m->right()->name + " -> " +
                  m->codomain()->name + ", " + key + " needs " + l->name + " x " + r->name + " -> " + c->name);
    BilinearMap out = *m;
    if (flag != Symmetry::none) out.set_symmetry(flag);
    return out;
  }

  LinearMap map(const std::string& key, const SpaceRef& d, const SpaceRef& c) const {
    const Binding& b = need(key);
    if (b.value == "0") return LinearMap(d, c);
    const LinearMap* m = f_.find_map(b.value);
    if (!m) fail(b, "undefined map '" + b.value + "'");
    if (!same_space(m->domain(), d) || !same_space(m->codomain(), c))
      fail(b, "dimension mismatch: '" + b.value + "' is " + m->domain()->name + " -> " + m->codomain()->name + ", " +
                  key + " needs " + d->name + " -> " + c->name);
    return *m;
  }

  SparseVec vector(const std::string& key, const SpaceRef& s) const {
    const Binding& b = need(key);
    std::string text = "SPACE " + s->name + " :";
    for (const auto& l : s->basis) text += " " + l;
    // reuse the entry parser on a one-entry map into s
    text += "\nMAP v " + s->name + " -> " + s->name + "\n(0) -> " + b.value + "\nEND\n";
    try {
      if (s->dim() == 0) {
        if (b.value != "0") fail(b, "space " + s->name + " is zero");
        return {};
      }
      return parse(text).maps.front().second.column(0);
    } catch (const ParseError& e) {
      throw ParseError(f_.source, b.line, b.column + std::max(0, e.column() - 8), e.message());
    }
  }

  const StructureSection& section() const { return *sec_; }

 private:
  const StructureFile& f_;
  const StructureSection* sec_ = nullptr;
};

}  // namespace

StructureFile courant_file(const CourantAlgebroid& x) {
  StructureFile f;
  add_space(f, x.a_space());
  add_space(f, x.b_space());
  add_product(f, "mult", x.algebra.mult);
  add_product(f, "action", x.action);
  add_product(f, "bracket", x.bracket);
  add_product(f, "anchor", x.anchor);
  add_product(f, "pairing", x.pairing);
  add_map(f, "partial", x.partial);
  StructureSection s{"courant", {}, 0};
  add_binding(s, "A", x.a_space()->name);
  add_binding(s, "B", x.b_space()->name);
  add_binding(s, "mult", "mult");
  add_binding(s, "unit", render(x.algebra.unit, *x.a_space()));
  for (const char* k : {"action", "bracket", "anchor", "pairing", "partial"}) add_binding(s, k, k);
  f.structure = std::move(s);
  return f;
}

StructureFile tca_file(const OneTruncatedConformalAlgebra& t, const UnitalCommAlgebra* algebra,
                       const BilinearMap* action) {
  StructureFile f;
  add_space(f, t.c0);
  add_space(f, t.c1);
  add_product(f, "p0_10", t.p0_10);
  add_product(f, "p0_01", t.p0_01);
  add_product(f, "p0_11", t.p0_11);
  add_product(f, "p1_11", t.p1_11);
  if (algebra) add_product(f, "mult", algebra->mult);
  if (action) add_product(f, "action", *action);
  add_map(f, "partial", t.partial);
  StructureSection s{"1tca", {}, 0};
  add_binding(s, "C0", t.c0->name);
  add_binding(s, "C1", t.c1->name);
  for (const char* k : {"partial", "p0_10", "p0_01", "p0_11", "p1_11"}) add_binding(s, k, k);
  if (algebra) {
    add_binding(s, "mult", "mult");
    add_binding(s, "unit", render(algebra->unit, *t.c0));
  }
  if (action) add_binding(s, "action", "action");
  f.structure = std::move(s);
  return f;
}

StructureFile view_file(const GradedVpaView& v) {
  StructureFile f;
  StructureSection s{"graded-vpa", {}, 0};
  for (std::size_t d = 0; d < v.spaces.size(); ++d) {
    add_space(f, v.spaces[d]);
    add_binding(s, "space " + std::to_string(d), v.spaces[d]->name);
  }
  for (std::size_t p = 0; p < v.d.size(); ++p) {
    const std::string name = "d_" + std::to_string(p);
    add_map(f, name, v.d[p]);
    add_binding(s, "d " + std::to_string(p), name);
  }
  for (const auto& [key, m] : v.mult) {
    const std::string suffix = std::to_string(key.first) + "_" + std::to_string(key.second);
    add_product(f, "mult_" + suffix, m);
    add_binding(s, "mult " + std::to_string(key.first) + " " + std::to_string(key.second), "mult_" + suffix);
  }
  for (const auto& [key, m] : v.prod) {
    const auto [n, p, q] = key;
    const std::string suffix = std::to_string(n) + "_" + std::to_string(p) + "_" + std::to_string(q);
    add_product(f, "prod_" + suffix, m);
    add_binding(s, "prod " + std::to_string(n) + " " + std::to_string(p) + " " + std::to_string(q), "prod_" + suffix);
  }
  add_binding(s, "unit", v.spaces.empty() ? "0" : render(v.unit, *v.spaces[0]));
  f.structure = std::move(s);
  return f;
}

CourantAlgebroid to_courant(const StructureFile& f) {
  Resolver r(f, "courant", {"A", "B", "mult", "unit", "action", "bracket", "anchor", "pairing", "partial"});
  CourantAlgebroid x;
  const SpaceRef a = r.space("A");
  const SpaceRef b = r.space("B");
  x.algebra.space = a;
  x.algebra.mult = r.product("mult", a, a, a);
  x.algebra.unit = r.vector("unit", a);
  x.module = b;
  x.action = r.product("action", a, b, b);
  x.bracket = r.product("bracket", b, b, b);
  x.anchor = r.product("anchor", b, a, a);
  x.pairing = r.product("pairing", b, b, a);
  x.partial = r.map("partial", a, b);
  return x;
}

OneTruncatedConformalAlgebra to_tca(const StructureFile& f) {
  Resolver r(f, "1tca", {"C0", "C1", "partial", "p0_10", "p0_01", "p0_11", "p1_11", "mult", "unit", "action"});
  OneTruncatedConformalAlgebra t;
  t.c0 = r.space("C0");
  t.c1 = r.space("C1");
  t.partial = r.map("partial", t.c0, t.c1);
  t.p0_10 = r.product("p0_10", t.c1, t.c0, t.c0);
  t.p0_01 = r.product("p0_01", t.c0, t.c1, t.c0);
  t.p0_11 = r.product("p0_11", t.c1, t.c1, t.c1);
  t.p1_11 = r.product("p1_11", t.c1, t.c1, t.c0);
  return t;
}

std::optional<std::pair<UnitalCommAlgebra, BilinearMap>> tca_extras(const StructureFile& f) {
  Resolver r(f, "1tca", {"C0", "C1", "partial", "p0_10", "p0_01", "p0_11", "p1_11", "mult", "unit", "action"});
  const int present = (r.find("mult") ? 1 : 0) + (r.find("unit") ? 1 : 0) + (r.find("action") ? 1 : 0);
  if (present == 0) return std::nullopt;
  if (present != 3)
    throw ParseError(f.source, r.section().line, 0, "bindings mult, unit and action must be given together");
  const SpaceRef c0 = r.space("C0");
  const SpaceRef c1 = r.space("C1");
  UnitalCommAlgebra alg{c0, r.product("mult", c0, c0, c0), r.vector("unit", c0)};
  return std::pair{std::move(alg), r.product("action", c0, c1, c1)};
}

GradedVpaView to_view(const StructureFile& f) {
  Resolver r(f, "graded-vpa", {"space", "d", "prod", "mult", "unit"});
  GradedVpaView v;
  auto numbers = [&](const Binding& b, std::size_t count) {
    std::istringstream in(b.key.substr(b.key.find(' ') == std::string::npos ? b.key.size() : b.key.find(' ')));
    std::vector<int> out;
    std::string tok;
    while (in >> tok) {
      if (!is_index(tok)) r.fail(b, "binding key '" + b.key + "' needs nonnegative degrees");
      out.push_back(std::stoi(tok));
    }
    if (out.size() != count) r.fail(b, "binding key '" + b.key + "' needs " + std::to_string(count) + " numbers");
    return out;
  };
  int top = -1;
  for (const auto& b : r.section().bindings)
    if (b.key.rfind("space", 0) == 0) top = std::max(top, numbers(b, 1)[0]);
  if (top < 0) throw ParseError(f.source, r.section().line, 0, "no 'space 0' binding");
  for (int d = 0; d <= top; ++d) v.spaces.push_back(r.space("space " + std::to_string(d)));
  v.d.resize(static_cast<std::size_t>(top));
  for (const auto& b : r.section().bindings) {
    const std::string head = b.key.substr(0, b.key.find(' '));
    if (head == "d") {
      const int p = numbers(b, 1)[0];
      if (p >= top) r.fail(b, "d " + std::to_string(p) + " leaves the top degree " + std::to_string(top));
      const LinearMap* m = f.find_map(b.value);
      if (!m) r.fail(b, "undefined map '" + b.value + "'");
      v.d[static_cast<std::size_t>(p)] = *m;
    } else if (head == "mult") {
      const auto k = numbers(b, 2);
      const BilinearMap* m = f.find_product(b.value);
      if (!m) r.fail(b, "undefined product '" + b.value + "'");
      v.mult.emplace(std::pair{k[0], k[1]}, *m);
    } else if (head == "prod") {
      const auto k = numbers(b, 3);
      const BilinearMap* m = f.find_product(b.value);
      if (!m) r.fail(b, "undefined product '" + b.value + "'");
      v.prod.emplace(std::tuple{k[0], k[1], k[2]}, *m);
    }
  }
  v.unit = r.vector("unit", v.spaces[0]);
  return v;
}

}  // namespace cvpa

#include "edgepath/pp_formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>

namespace edgepath {

namespace {

struct Tok {
  std::string text;
  std::size_t column;
};

std::vector<Tok> lex(std::string_view text, std::string_view punctuation) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (punctuation.find(c) != std::string_view::npos) {
      out.push_back({std::string(1, c), i + 1});
      ++i;
    } else {
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             punctuation.find(text[i]) == std::string_view::npos) {
        ++i;
      }
      out.push_back({std::string(text.substr(start, i - start)), start + 1});
    }
  }
  return out;
}

// ---------------------------------------------------------------- prefix form

struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> items;
  std::size_t column = 0;
  bool is_list() const { return atom.empty(); }
};

class SExprReader {
 public:
  explicit SExprReader(std::vector<Tok> toks) : toks_(std::move(toks)) {}

  bool done() const { return pos_ == toks_.size(); }

  SExpr read() {
    if (done()) throw ParseError("unexpected end of formula", 1, end_column());
    const Tok& t = toks_[pos_++];
    if (t.text == ")") throw ParseError("unbalanced ')'", 1, t.column);
    if (t.text != "(") return SExpr{t.text, {}, t.column};
    SExpr list;
    list.column = t.column;
    while (true) {
      if (done()) throw ParseError("missing ')'", 1, end_column());
      if (toks_[pos_].text == ")") {
        ++pos_;
        return list;
      }
      list.items.push_back(read());
    }
  }

 private:
  std::size_t end_column() const { return toks_.empty() ? 1 : toks_.back().column + 1; }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

void collect_body(const SExpr& e, PPFormula& f) {
  if (!e.is_list() || e.items.empty() || e.items.front().is_list()) {
    throw ParseError("expected (and ...), (exists ...), or an atom", 1, e.column);
  }
  const std::string& head = e.items.front().atom;
  if (head == "and") {
    for (std::size_t i = 1; i < e.items.size(); ++i) collect_body(e.items[i], f);
  } else if (head == "exists") {
    if (e.items.size() != 3 || !e.items[1].is_list()) {
      throw ParseError("expected (exists (vars...) body)", 1, e.column);
    }
    for (const auto& v : e.items[1].items) {
      if (v.is_list()) throw ParseError("expected a variable name", 1, v.column);
      f.bound_vars.push_back(v.atom);
    }
    collect_body(e.items[2], f);
  } else {
    PPAtom atom{head, {}};
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      if (e.items[i].is_list()) throw ParseError("atom arguments must be variables", 1,
                                                 e.items[i].column);
      atom.args.push_back(e.items[i].atom);
    }
    if (atom.is_equality() && atom.args.size() != 2) {
      throw ParseError("'=' takes exactly two variables", 1, e.column);
    }
    f.atoms.push_back(std::move(atom));
  }
}

PPFormula parse_prefix(std::string_view text) {
  SExprReader reader(lex(text, "()"));
  PPFormula f;
  bool have_free = false;
  bool have_body = false;
  while (!reader.done()) {
    SExpr e = reader.read();
    if (e.is_list() && !e.items.empty() && !e.items.front().is_list() &&
        e.items.front().atom == "free") {
      if (have_free) throw ParseError("duplicate (free ...) declaration", 1, e.column);
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        if (e.items[i].is_list()) throw ParseError("expected a variable name", 1,
                                                   e.items[i].column);
        f.free_vars.push_back(e.items[i].atom);
      }
      have_free = true;
    } else {
      if (have_body) throw ParseError("more than one formula body", 1, e.column);
      collect_body(e, f);
      have_body = true;
    }
  }
  if (!have_body) throw ParseError("empty formula", 1, 1);
  if (!have_free) {
    std::set<std::string> bound(f.bound_vars.begin(), f.bound_vars.end());
    for (const auto& a : f.atoms) {
      for (const auto& v : a.args) {
        if (!bound.count(v) &&
            std::find(f.free_vars.begin(), f.free_vars.end(), v) == f.free_vars.end()) {
          f.free_vars.push_back(v);
        }
      }
    }
  }
  return f;
}

// ---------------------------------------------------------------- shorthand

PPFormula parse_shorthand(std::string_view text) {
  auto toks = lex(text, "(),&.:=");
  std::size_t pos = 0;
  auto at_end = [&] { return pos == toks.size(); };
  auto end_col = [&] { return toks.empty() ? std::size_t{1} : toks.back().column + 1; };
  auto peek = [&]() -> const Tok* { return at_end() ? nullptr : &toks[pos]; };
  auto expect_ident = [&]() -> std::string {
    if (at_end()) throw ParseError("expected a name", 1, end_col());
    const Tok& t = toks[pos];
    if (t.text.size() == 1 && std::string_view("(),&.:=").find(t.text[0]) != std::string_view::npos) {
      throw ParseError("expected a name, found '" + t.text + "'", 1, t.column);
    }
    ++pos;
    return t.text;
  };
  auto expect = [&](std::string_view s) {
    if (at_end()) throw ParseError("expected '" + std::string(s) + "'", 1, end_col());
    if (toks[pos].text != s) {
      throw ParseError("expected '" + std::string(s) + "', found '" + toks[pos].text + "'", 1,
                       toks[pos].column);
    }
    ++pos;
  };

  PPFormula f;
  while (peek() && peek()->text == "exists") {
    ++pos;
    f.bound_vars.push_back(expect_ident());
    while (peek() && peek()->text != "." && peek()->text != ":") {
      if (peek()->text == ",") ++pos;
      f.bound_vars.push_back(expect_ident());
    }
    if (peek() && (peek()->text == "." || peek()->text == ":")) {
      ++pos;
    } else {
      throw ParseError("expected '.' after the quantified variables", 1,
                       at_end() ? end_col() : toks[pos].column);
    }
  }
  while (true) {
    std::string name = expect_ident();
    if (peek() && peek()->text == "=") {
      ++pos;
      f.atoms.push_back({"=", {name, expect_ident()}});
    } else {
      PPAtom atom{name, {}};
      expect("(");
      atom.args.push_back(expect_ident());
      while (peek() && peek()->text == ",") {
        ++pos;
        atom.args.push_back(expect_ident());
      }
      expect(")");
      f.atoms.push_back(std::move(atom));
    }
    if (at_end()) break;
    expect("&");
  }
  std::set<std::string> bound(f.bound_vars.begin(), f.bound_vars.end());
  for (const auto& a : f.atoms) {
    for (const auto& v : a.args) {
      if (!bound.count(v) &&
          std::find(f.free_vars.begin(), f.free_vars.end(), v) == f.free_vars.end()) {
        f.free_vars.push_back(v);
      }
    }
  }
  return f;
}

}  // namespace

PPFormula parse_pp_formula(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty formula", 1, 1);
  PPFormula f = text[first] == '(' ? parse_prefix(text) : parse_shorthand(text);
  if (f.free_vars.empty()) throw ParseError("formula has no free variables", 1, 1);
  return f;
}

std::string to_string(const PPFormula& f) {
  std::string out = "(free";
  for (const auto& v : f.free_vars) out += " " + v;
  out += ") ";
  std::string body;
  auto atom_text = [](const PPAtom& a) {
    std::string s = "(" + a.relation;
    for (const auto& v : a.args) s += " " + v;
    return s + ")";
  };
  if (f.atoms.size() == 1) {
    body = atom_text(f.atoms.front());
  } else {
    body = "(and";
    for (const auto& a : f.atoms) body += " " + atom_text(a);
    body += ")";
  }
  if (!f.bound_vars.empty()) {
    std::string vars;
    for (const auto& v : f.bound_vars) vars += (vars.empty() ? "" : " ") + v;
    body = "(exists (" + vars + ") " + body + ")";
  }
  return out + body;
}

void validate_pp_formula(const PPFormula& f, const RelationalStructure& s) {
  std::set<std::string> free(f.free_vars.begin(), f.free_vars.end());
  std::set<std::string> bound(f.bound_vars.begin(), f.bound_vars.end());
  if (free.size() != f.free_vars.size()) throw Error("repeated free variable");
  if (bound.size() != f.bound_vars.size()) throw Error("repeated bound variable");
  for (const auto& v : f.bound_vars) {
    if (free.count(v)) throw Error("variable '" + v + "' is both free and bound");
  }
  if (f.atoms.empty()) throw Error("formula has no atoms");
  for (const auto& a : f.atoms) {
    if (!a.is_equality()) {
      const NamedRelation* r = s.find_relation(a.relation);
      if (r == nullptr) {
        throw Error("unknown relation '" + a.relation + "' in structure '" + s.name() + "'");
      }
      if (r->relation.arity() != a.args.size()) {
        throw Error("relation '" + a.relation + "' has arity " +
                    std::to_string(r->relation.arity()) + " but is applied to " +
                    std::to_string(a.args.size()) + " variables");
      }
    }
    for (const auto& v : a.args) {
      if (!free.count(v) && !bound.count(v)) {
        throw Error("variable '" + v + "' is neither free nor bound");
      }
    }
  }
}

Relation eval_pp_formula(const PPFormula& f, const RelationalStructure& s) {
  validate_pp_formula(f, s);

  std::map<std::string, std::size_t> var_id;
  for (const auto& v : f.free_vars) var_id.emplace(v, var_id.size());
  for (const auto& v : f.bound_vars) var_id.emplace(v, var_id.size());
  const std::size_t nvars = var_id.size();

  // Equality atoms collapse variables into classes.
  std::vector<std::size_t> parent(nvars);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& a : f.atoms) {
    if (a.is_equality()) {
      std::size_t x = find(var_id.at(a.args[0]));
      std::size_t y = find(var_id.at(a.args[1]));
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }

  struct Atom {
    const Relation* relation;
    std::vector<std::size_t> vars;  // class representatives
  };
  std::vector<Atom> atoms;
  std::vector<bool> constrained(nvars, false);
  for (const auto& a : f.atoms) {
    if (a.is_equality()) continue;
    Atom atom{&s.find_relation(a.relation)->relation, {}};
    for (const auto& v : a.args) {
      atom.vars.push_back(find(var_id.at(v)));
      constrained[atom.vars.back()] = true;
    }
    atoms.push_back(std::move(atom));
  }

  // Free classes first so the bound part becomes an existence check.
  std::vector<std::size_t> order;
  std::vector<bool> seen(nvars, false);
  for (const auto& v : f.free_vars) {
    std::size_t r = find(var_id.at(v));
    if (!seen[r]) {
      seen[r] = true;
      order.push_back(r);
    }
  }
  const std::size_t free_count = order.size();
  for (const auto& v : f.bound_vars) {
    std::size_t r = find(var_id.at(v));
    if (!seen[r] && constrained[r]) {
      seen[r] = true;
      order.push_back(r);
    }
  }

  std::vector<std::size_t> position(nvars, 0);
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;
  std::vector<std::vector<const Atom*>> checks(order.size());
  for (const auto& atom : atoms) {
    std::size_t last = 0;
    for (std::size_t v : atom.vars) last = std::max(last, position[v]);
    checks[last].push_back(&atom);
  }

  std::vector<Element> value(nvars, 0);
  Tuple image;
  auto consistent = [&](std::size_t depth) {
    for (const Atom* atom : checks[depth]) {
      image.resize(atom->vars.size());
      for (std::size_t j = 0; j < atom->vars.size(); ++j) image[j] = value[atom->vars[j]];
      if (!atom->relation->contains(image)) return false;
    }
    return true;
  };

  const auto domain = static_cast<Element>(s.domain_size());
  auto witness = [&](auto& self, std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    for (Element x = 0; x < domain; ++x) {
      value[order[depth]] = x;
      if (consistent(depth) && self(self, depth + 1)) return true;
    }
    return false;
  };

  std::vector<Tuple> rows;
  auto assign_free = [&](auto& self, std::size_t depth) -> void {
    if (depth == free_count) {
      if (witness(witness, depth)) {
        Tuple row;
        row.reserve(f.free_vars.size());
        for (const auto& v : f.free_vars) row.push_back(value[find(var_id.at(v))]);
        rows.push_back(std::move(row));
      }
      return;
    }
    for (Element x = 0; x < domain; ++x) {
      value[order[depth]] = x;
      if (consistent(depth)) self(self, depth + 1);
    }
  };
  assign_free(assign_free, 0);
  return Relation(f.free_vars.size(), std::move(rows));
}

}  // namespace edgepath

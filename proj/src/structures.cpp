#include "edgepath/structures.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace edgepath {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            message),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------- Relation

Relation::Relation(std::size_t arity, std::vector<Tuple> tuples)
    : arity_(arity), tuples_(std::move(tuples)) {
  if (arity_ == 0) throw Error("relation arity must be positive");
  for (const auto& t : tuples_) {
    if (t.size() != arity_) {
      throw Error("tuple of length " + std::to_string(t.size()) + " in relation of arity " +
                  std::to_string(arity_));
    }
  }
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

std::optional<std::size_t> Relation::index_of(std::span<const Element> t) const {
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t,
                             [](const Tuple& lhs, std::span<const Element> rhs) {
                               return std::lexicographical_compare(lhs.begin(), lhs.end(),
                                                                   rhs.begin(), rhs.end());
                             });
  if (it == tuples_.end() || !std::equal(it->begin(), it->end(), t.begin(), t.end())) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - tuples_.begin());
}

bool Relation::contains(std::span<const Element> t) const { return index_of(t).has_value(); }

// ---------------------------------------------------------------- RelationalStructure

RelationalStructure::RelationalStructure(std::string name, std::vector<std::string> domain,
                                         std::vector<NamedRelation> relations)
    : name_(std::move(name)), domain_(std::move(domain)), relations_(std::move(relations)) {
  if (domain_.empty()) throw Error("structure '" + name_ + "' has an empty domain");
  std::vector<std::string> sorted = domain_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("structure '" + name_ + "' has a repeated domain element");
  }
  for (const auto& r : relations_) {
    for (const auto& t : r.relation) {
      for (Element e : t) {
        if (e >= domain_.size()) {
          throw Error("relation '" + r.name + "' uses an element outside the domain");
        }
      }
    }
  }
}

const NamedRelation* RelationalStructure::find_relation(std::string_view name) const {
  for (const auto& r : relations_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::optional<Element> RelationalStructure::element_index(std::string_view label) const {
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i] == label) return static_cast<Element>(i);
  }
  return std::nullopt;
}

std::string RelationalStructure::tuple_label(std::span<const Element> t) const {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += label(t[i]);
  }
  return out + ")";
}

bool similar(const RelationalStructure& a, const RelationalStructure& b) {
  if (a.relations().size() != b.relations().size()) return false;
  for (std::size_t i = 0; i < a.relations().size(); ++i) {
    if (a.relation(i).relation.arity() != b.relation(i).relation.arity()) return false;
  }
  return true;
}

void require_similar(const RelationalStructure& a, const RelationalStructure& b) {
  if (a.relations().size() != b.relations().size()) {
    throw SimilarityError("structures '" + a.name() + "' and '" + b.name() +
                          "' have different numbers of relations");
  }
  for (std::size_t i = 0; i < a.relations().size(); ++i) {
    if (a.relation(i).relation.arity() != b.relation(i).relation.arity()) {
      throw SimilarityError("relation " + std::to_string(i + 1) + " has arity " +
                            std::to_string(a.relation(i).relation.arity()) + " in '" +
                            a.name() + "' but " +
                            std::to_string(b.relation(i).relation.arity()) + " in '" +
                            b.name() + "'");
    }
  }
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#') {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

bool is_keyword(std::string_view s) {
  return s == "structure" || s == "domain" || s == "relation" || s == "end";
}

}  // namespace

RelationalStructure parse_structure(std::string_view text) {
  std::string name;
  std::vector<std::string> domain;
  bool have_domain = false;
  bool finished = false;
  std::map<std::string, Element, std::less<>> index;

  struct Pending {
    std::string name;
    std::size_t arity;
    std::vector<Tuple> tuples;
  };
  std::vector<Pending> relations;
  Pending* current = nullptr;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::size_t last_line = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tokens = tokenize_line(line);
    if (tokens.empty()) continue;
    last_line = line_no;
    const Token& head = tokens.front();

    if (finished) throw ParseError("content after 'end'", line_no, head.column);

    if (name.empty()) {
      if (head.text != "structure") {
        throw ParseError("expected 'structure <name>'", line_no, head.column);
      }
      if (tokens.size() != 2) {
        throw ParseError("'structure' takes exactly one name", line_no, head.column);
      }
      name = tokens[1].text;
      continue;
    }

    if (head.text == "structure") {
      throw ParseError("duplicate 'structure' header", line_no, head.column);
    } else if (head.text == "domain") {
      if (have_domain) throw ParseError("duplicate 'domain' line", line_no, head.column);
      if (tokens.size() < 2) throw ParseError("empty domain", line_no, head.column);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (is_keyword(tokens[i].text)) {
          throw ParseError("keyword used as a domain element", line_no, tokens[i].column);
        }
        if (!index.emplace(tokens[i].text, static_cast<Element>(domain.size())).second) {
          throw ParseError("repeated domain element '" + tokens[i].text + "'", line_no,
                           tokens[i].column);
        }
        domain.push_back(tokens[i].text);
      }
      have_domain = true;
    } else if (head.text == "relation") {
      if (!have_domain) {
        throw ParseError("'relation' before 'domain'", line_no, head.column);
      }
      if (tokens.size() != 3) {
        throw ParseError("expected 'relation <name> <arity>'", line_no, head.column);
      }
      for (const auto& r : relations) {
        if (r.name == tokens[1].text) {
          throw ParseError("duplicate relation '" + tokens[1].text + "'", line_no,
                           tokens[1].column);
        }
      }
      std::size_t arity = 0;
      try {
        std::size_t used = 0;
        long long v = std::stoll(tokens[2].text, &used);
        if (used != tokens[2].text.size() || v <= 0) throw std::invalid_argument("arity");
        arity = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw ParseError("arity must be a positive integer", line_no, tokens[2].column);
      }
      relations.push_back({tokens[1].text, arity, {}});
      current = &relations.back();
    } else if (head.text == "end") {
      if (tokens.size() != 1) throw ParseError("unexpected token after 'end'", line_no,
                                               tokens[1].column);
      finished = true;
    } else {
      if (current == nullptr) {
        throw ParseError("tuple outside a relation block", line_no, head.column);
      }
      if (tokens.size() != current->arity) {
        throw ParseError("arity mismatch: relation '" + current->name + "' has arity " +
                             std::to_string(current->arity) + " but the tuple has " +
                             std::to_string(tokens.size()) + " entries",
                         line_no, head.column);
      }
      Tuple t;
      t.reserve(tokens.size());
      for (const auto& tok : tokens) {
        auto it = index.find(tok.text);
        if (it == index.end()) {
          throw ParseError("unknown domain element '" + tok.text + "'", line_no, tok.column);
        }
        t.push_back(it->second);
      }
      current->tuples.push_back(std::move(t));
    }
  }
  if (name.empty()) throw ParseError("missing 'structure' header", line_no, 1);
  if (!have_domain) throw ParseError("missing 'domain' line", last_line + 1, 1);
  if (!finished) throw ParseError("missing 'end'", last_line + 1, 1);

  std::vector<NamedRelation> named;
  named.reserve(relations.size());
  for (auto& r : relations) {
    named.push_back({r.name, Relation(r.arity, std::move(r.tuples))});
  }
  return RelationalStructure(std::move(name), std::move(domain), std::move(named));
}

std::string serialize_structure(const RelationalStructure& s) {
  std::ostringstream out;
  out << "structure " << s.name() << "\n";
  out << "domain";
  for (const auto& d : s.domain()) out << ' ' << d;
  out << "\n";
  for (const auto& r : s.relations()) {
    out << "relation " << r.name << ' ' << r.relation.arity() << "\n";
    for (const auto& t : r.relation) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ' ';
        out << s.label(t[i]);
      }
      out << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

RelationalStructure load_structure(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open structure file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_structure(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.filename().string() + ": " +
                         std::string(e.what()).substr(std::string(e.what()).find(": ") + 2),
                     e.line(), e.column());
  }
}

// ---------------------------------------------------------------- homomorphisms

bool is_homomorphism(const RelationalStructure& source, const RelationalStructure& target,
                     std::span<const Element> map) {
  if (!similar(source, target) || map.size() != source.domain_size()) return false;
  for (Element v : map) {
    if (v >= target.domain_size()) return false;
  }
  Tuple image;
  for (std::size_t i = 0; i < source.relations().size(); ++i) {
    const Relation& to = target.relation(i).relation;
    for (const auto& t : source.relation(i).relation) {
      image.resize(t.size());
      for (std::size_t j = 0; j < t.size(); ++j) image[j] = map[t[j]];
      if (!to.contains(image)) return false;
    }
  }
  return true;
}

Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
  Homomorphism out;
  out.map.reserve(inner.map.size());
  for (Element x : inner.map) out.map.push_back(outer.map.at(x));
  return out;
}

namespace {

/// Membership test for a target relation; a dense bit table when small enough.
class TargetLookup {
 public:
  TargetLookup(const Relation& r, std::size_t domain_size) : relation_(&r), base_(domain_size) {
    std::size_t cells = 1;
    dense_ = true;
    for (std::size_t i = 0; i < r.arity(); ++i) {
      if (cells > (std::size_t{1} << 26) / std::max<std::size_t>(domain_size, 1)) {
        dense_ = false;
        break;
      }
      cells *= domain_size;
    }
    if (dense_) {
      bits_.assign(cells, false);
      for (const auto& t : r) bits_[encode(t)] = true;
    }
  }

  bool contains(std::span<const Element> t) const {
    return dense_ ? bits_[encode(t)] : relation_->contains(t);
  }

 private:
  std::size_t encode(std::span<const Element> t) const {
    std::size_t code = 0;
    for (Element e : t) code = code * base_ + e;
    return code;
  }

  const Relation* relation_;
  std::size_t base_;
  bool dense_ = false;
  std::vector<bool> bits_;
};

struct Constraint {
  std::size_t relation;
  const Tuple* scope;
};

class HomSearch {
 public:
  HomSearch(const RelationalStructure& source, const RelationalStructure& target,
            bool lexicographic)
      : source_(source), target_(target) {
    require_similar(source, target);
    for (std::size_t i = 0; i < target.relations().size(); ++i) {
      lookups_.emplace_back(target.relation(i).relation, target.domain_size());
    }
    const std::size_t n = source.domain_size();
    std::vector<std::vector<Constraint>> incident(n);
    for (std::size_t i = 0; i < source.relations().size(); ++i) {
      for (const auto& t : source.relation(i).relation) {
        std::vector<Element> vars(t.begin(), t.end());
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        for (Element v : vars) incident[v].push_back({i, &t});
      }
    }

    if (lexicographic) {
      order_.resize(n);
      std::iota(order_.begin(), order_.end(), Element{0});
    } else {
      // Greedy most-constrained-first: prefer variables sharing the most
      // constraints with those already placed, then higher degree.
      std::vector<std::size_t> linked(n, 0);
      std::vector<bool> placed(n, false);
      for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
          if (placed[v]) continue;
          if (best == n || linked[v] > linked[best] ||
              (linked[v] == linked[best] && incident[v].size() > incident[best].size())) {
            best = v;
          }
        }
        placed[best] = true;
        order_.push_back(static_cast<Element>(best));
        for (const auto& c : incident[best]) {
          for (Element u : *c.scope) {
            if (!placed[u]) ++linked[u];
          }
        }
      }
    }

    std::vector<std::size_t> position(n);
    for (std::size_t k = 0; k < n; ++k) position[order_[k]] = k;
    checks_.resize(n);
    for (std::size_t i = 0; i < source.relations().size(); ++i) {
      for (const auto& t : source.relation(i).relation) {
        std::size_t last = 0;
        for (Element v : t) last = std::max(last, position[v]);
        checks_[last].push_back({i, &t});
      }
    }
  }

  Element first_variable() const { return order_.empty() ? 0 : order_.front(); }

  /// Visits every solution; the visitor returns false to stop.
  template <typename Visit>
  void run(Visit&& visit, std::optional<Element> first_value = std::nullopt) {
    assignment_.assign(source_.domain_size(), 0);
    stop_ = false;
    descend(0, visit, first_value);
  }

 private:
  template <typename Visit>
  void descend(std::size_t depth, Visit& visit, std::optional<Element> first_value) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!visit(assignment_)) stop_ = true;
      return;
    }
    const Element var = order_[depth];
    Element lo = 0;
    Element hi = static_cast<Element>(target_.domain_size());
    if (depth == 0 && first_value) {
      lo = *first_value;
      hi = *first_value + 1;
    }
    for (Element value = lo; value < hi && !stop_; ++value) {
      assignment_[var] = value;
      if (consistent(depth)) descend(depth + 1, visit, first_value);
    }
  }

  bool consistent(std::size_t depth) {
    for (const auto& c : checks_[depth]) {
      image_.resize(c.scope->size());
      for (std::size_t j = 0; j < c.scope->size(); ++j) image_[j] = assignment_[(*c.scope)[j]];
      if (!lookups_[c.relation].contains(image_)) return false;
    }
    return true;
  }

  const RelationalStructure& source_;
  const RelationalStructure& target_;
  std::vector<TargetLookup> lookups_;
  std::vector<Element> order_;
  std::vector<std::vector<Constraint>> checks_;
  std::vector<Element> assignment_;
  Tuple image_;
  bool stop_ = false;
};

}  // namespace

std::optional<Homomorphism> find_homomorphism(const RelationalStructure& source,
                                              const RelationalStructure& target) {
  auto found = enumerate_homomorphisms(source, target, SearchOptions{.limit = 1});
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::vector<Homomorphism> enumerate_homomorphisms(const RelationalStructure& source,
                                                  const RelationalStructure& target,
                                                  const SearchOptions& options) {
  std::vector<Homomorphism> out;
  if (options.limit) {
    if (*options.limit == 0) {
      require_similar(source, target);
      return out;
    }
    // Index-order search yields solutions in lexicographic order directly.
    HomSearch search(source, target, true);
    search.run([&](const std::vector<Element>& a) {
      out.push_back({a});
      return out.size() < *options.limit;
    });
    return out;
  }

  const unsigned threads = std::max(1u, options.threads);
  std::atomic<std::size_t> total{0};
  auto overflow = [&] {
    throw CapExceeded("homomorphism enumeration exceeded " +
                      std::to_string(options.max_results) + " results");
  };

  if (threads == 1 || target.domain_size() < 2) {
    HomSearch search(source, target, false);
    bool exceeded = false;
    search.run([&](const std::vector<Element>& a) {
      if (out.size() >= options.max_results) {
        exceeded = true;
        return false;
      }
      out.push_back({a});
      return true;
    });
    if (exceeded) overflow();
  } else {
    const std::size_t branches = target.domain_size();
    std::vector<std::vector<Homomorphism>> partial(branches);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> exceeded{false};
    auto worker = [&] {
      HomSearch search(source, target, false);
      for (std::size_t b = next++; b < branches; b = next++) {
        search.run(
            [&](const std::vector<Element>& a) {
              if (exceeded.load()) return false;
              if (total.fetch_add(1) >= options.max_results) {
                exceeded = true;
                return false;
              }
              partial[b].push_back({a});
              return true;
            },
            static_cast<Element>(b));
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, branches); ++t) pool.emplace_back(worker);
    pool.clear();
    if (exceeded) overflow();
    for (auto& p : partial) {
      out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- direct power

RelationalStructure direct_power(const RelationalStructure& s, std::size_t n, std::size_t cap) {
  if (n == 0) throw Error("direct power exponent must be positive");
  auto checked_pow = [&](std::size_t base, const char* what) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (base != 0 && v > cap / base) {
        throw CapExceeded(std::string(what) + " of the " + std::to_string(n) +
                          "-th power exceeds the cap of " + std::to_string(cap));
      }
      v *= base;
    }
    return v;
  };
  const std::size_t d = s.domain_size();
  const std::size_t size = checked_pow(d, "domain");
  for (const auto& r : s.relations()) checked_pow(r.relation.size(), "a relation");

  std::vector<std::string> labels;
  labels.reserve(size);
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::vector<Element> digits(n);
    std::size_t rest = idx;
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = static_cast<Element>(rest % d);
      rest /= d;
    }
    labels.push_back(s.tuple_label(digits));
  }

  std::vector<NamedRelation> relations;
  for (const auto& r : s.relations()) {
    const Relation& base = r.relation;
    const std::size_t arity = base.arity();
    std::vector<Tuple> rows;
    if (!base.empty()) {
      std::vector<std::size_t> pick(n, 0);
      while (true) {
        Tuple row(arity, 0);
        for (std::size_t j = 0; j < arity; ++j) {
          std::size_t code = 0;
          for (std::size_t k = 0; k < n; ++k) code = code * d + base[pick[k]][j];
          row[j] = static_cast<Element>(code);
        }
        rows.push_back(std::move(row));
        std::size_t k = n;
        while (k > 0 && ++pick[k - 1] == base.size()) pick[--k] = 0;
        if (k == 0) break;
      }
    }
    relations.push_back({r.name, Relation(arity, std::move(rows))});
  }
  return RelationalStructure(s.name() + "^" + std::to_string(n), std::move(labels),
                             std::move(relations));
}

// ---------------------------------------------------------------- Polymorphism

Polymorphism::Polymorphism(std::size_t arity, std::size_t source_size, std::vector<Element> table)
    : arity_(arity), source_size_(source_size), table_(std::move(table)) {
  if (arity_ == 0) throw Error("polymorphism arity must be positive");
  std::size_t expected = 1;
  for (std::size_t i = 0; i < arity_; ++i) expected *= source_size_;
  if (table_.size() != expected) {
    throw Error("polymorphism table has " + std::to_string(table_.size()) + " entries, expected " +
                std::to_string(expected));
  }
}

std::size_t Polymorphism::index_of(std::span<const Element> args) const {
  std::size_t code = 0;
  for (Element a : args) code = code * source_size_ + a;
  return code;
}

Element Polymorphism::operator()(std::span<const Element> args) const {
  return table_[index_of(args)];
}

Tuple Polymorphism::arguments(std::size_t index) const {
  Tuple args(arity_);
  for (std::size_t k = arity_; k-- > 0;) {
    args[k] = static_cast<Element>(index % source_size_);
    index /= source_size_;
  }
  return args;
}

Tuple Polymorphism::apply(std::span<const Tuple* const> rows) const {
  if (rows.size() != arity_) throw Error("coordinatewise application needs arity-many rows");
  const std::size_t width = rows.empty() ? 0 : rows.front()->size();
  Tuple out(width);
  for (std::size_t j = 0; j < width; ++j) {
    std::size_t code = 0;
    for (const Tuple* row : rows) code = code * source_size_ + (*row)[j];
    out[j] = table_[code];
  }
  return out;
}

bool is_polymorphism(const RelationalStructure& source, const RelationalStructure& target,
                     const Polymorphism& f) {
  if (!similar(source, target) || f.source_size() != source.domain_size()) return false;
  for (Element v : f.table()) {
    if (v >= target.domain_size()) return false;
  }
  const std::size_t n = f.arity();
  for (std::size_t i = 0; i < source.relations().size(); ++i) {
    const Relation& from = source.relation(i).relation;
    const Relation& to = target.relation(i).relation;
    if (from.empty()) continue;
    std::vector<std::size_t> pick(n, 0);
    std::vector<const Tuple*> rows(n);
    while (true) {
      for (std::size_t k = 0; k < n; ++k) rows[k] = &from[pick[k]];
      if (!to.contains(f.apply(rows))) return false;
      std::size_t k = n;
      while (k > 0 && ++pick[k - 1] == from.size()) pick[--k] = 0;
      if (k == 0) break;
    }
  }
  return true;
}

}  // namespace edgepath

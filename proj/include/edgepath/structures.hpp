#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace edgepath {

/// Index of a domain element in its structure's domain order.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A configured size cap (power domain, enumeration count, ...) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class SimilarityError : public Error {
 public:
  using Error::Error;
};

/// A finite relation: equal-length tuples, stored sorted and duplicate-free.
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t arity, std::vector<Tuple> tuples);

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  const Tuple& operator[](std::size_t i) const { return tuples_[i]; }
  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  bool contains(std::span<const Element> t) const;
  std::optional<std::size_t> index_of(std::span<const Element> t) const;

  bool operator==(const Relation&) const = default;

 private:
  std::size_t arity_ = 0;
  std::vector<Tuple> tuples_;
};

struct NamedRelation {
  std::string name;
  Relation relation;

  bool operator==(const NamedRelation&) const = default;
};

class RelationalStructure {
 public:
  RelationalStructure() = default;
  /// Validates: non-empty unique domain, tuple entries inside the domain.
  RelationalStructure(std::string name, std::vector<std::string> domain,
                      std::vector<NamedRelation> relations);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t domain_size() const { return domain_.size(); }
  const std::vector<NamedRelation>& relations() const { return relations_; }
  const NamedRelation& relation(std::size_t i) const { return relations_.at(i); }
  const NamedRelation* find_relation(std::string_view name) const;
  std::optional<Element> element_index(std::string_view label) const;
  const std::string& label(Element e) const { return domain_.at(e); }
  std::string tuple_label(std::span<const Element> t) const;

  bool operator==(const RelationalStructure&) const = default;

 private:
  std::string name_;
  std::vector<std::string> domain_;
  std::vector<NamedRelation> relations_;
};

bool similar(const RelationalStructure& a, const RelationalStructure& b);
/// Throws SimilarityError naming the first mismatch.
void require_similar(const RelationalStructure& a, const RelationalStructure& b);

RelationalStructure parse_structure(std::string_view text);
std::string serialize_structure(const RelationalStructure& s);
RelationalStructure load_structure(const std::filesystem::path& path);

struct Homomorphism {
  std::vector<Element> map;

  auto operator<=>(const Homomorphism&) const = default;
};

bool is_homomorphism(const RelationalStructure& source, const RelationalStructure& target,
                     std::span<const Element> map);
/// (outer ∘ inner)(x) = outer(inner(x)).
Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner);

struct SearchOptions {
  /// Keep only the lexicographically first `limit` maps.
  std::optional<std::size_t> limit;
  /// Hard cap on the number of solutions; exceeding it throws CapExceeded.
  std::size_t max_results = 10'000'000;
  unsigned threads = 1;
};

std::optional<Homomorphism> find_homomorphism(const RelationalStructure& source,
                                              const RelationalStructure& target);
/// Complete list ordered lexicographically by the map as a tuple.
std::vector<Homomorphism> enumerate_homomorphisms(const RelationalStructure& source,
                                                  const RelationalStructure& target,
                                                  const SearchOptions& options = {});

inline constexpr std::size_t kDefaultPowerCap = 1'000'000;

/// n-th direct power. Element (x1,...,xn) has mixed-radix index with x1 most
/// significant, so the element order is lexicographic.
RelationalStructure direct_power(const RelationalStructure& s, std::size_t n,
                                 std::size_t cap = kDefaultPowerCap);

/// Operation table of an n-ary function A^n -> B, indexed like direct_power.
class Polymorphism {
 public:
  Polymorphism() = default;
  Polymorphism(std::size_t arity, std::size_t source_size, std::vector<Element> table);

  std::size_t arity() const { return arity_; }
  std::size_t source_size() const { return source_size_; }
  const std::vector<Element>& table() const { return table_; }

  Element operator()(std::span<const Element> args) const;
  std::size_t index_of(std::span<const Element> args) const;
  Tuple arguments(std::size_t index) const;

  /// Coordinatewise application to n tuples of equal length.
  Tuple apply(std::span<const Tuple* const> rows) const;

  auto operator<=>(const Polymorphism&) const = default;

 private:
  std::size_t arity_ = 0;
  std::size_t source_size_ = 0;
  std::vector<Element> table_;
};

/// Checks that f maps every relation of `source` coordinatewise into `target`.
bool is_polymorphism(const RelationalStructure& source, const RelationalStructure& target,
                     const Polymorphism& f);

}  // namespace edgepath

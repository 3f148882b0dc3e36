#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "edgepath/structures.hpp"

namespace edgepath {

/// One conjunct: a relation symbol applied to variables, or `=` on two variables.
struct PPAtom {
  std::string relation;
  std::vector<std::string> args;

  bool is_equality() const { return relation == "="; }
  bool operator==(const PPAtom&) const = default;
};

/// Primitive-positive formula: ∃ bound_vars . atom_1 ∧ ... ∧ atom_k,
/// with free_vars giving the column order of the defined relation.
struct PPFormula {
  std::vector<std::string> free_vars;
  std::vector<std::string> bound_vars;
  std::vector<PPAtom> atoms;

  bool operator==(const PPFormula&) const = default;
};

/// Accepts the prefix form
///   (free x y) (exists (z) (and (E x z) (= z y)))
/// and the shorthand `E(x,y)`, `E(x,z) & E(z,y)`, `exists z . E(x,z) & E(z,y)`.
/// In the shorthand, free variables are the unbound ones in order of first use.
PPFormula parse_pp_formula(std::string_view text);

/// Canonical prefix rendering; parse_pp_formula(to_string(f)) == f.
std::string to_string(const PPFormula& f);

/// Throws Error if a relation is unknown, an arity is wrong, or a variable is undeclared.
void validate_pp_formula(const PPFormula& f, const RelationalStructure& s);

/// The relation { ā : Φ(ā) holds in s }, columns ordered as free_vars.
Relation eval_pp_formula(const PPFormula& f, const RelationalStructure& s);

}  // namespace edgepath

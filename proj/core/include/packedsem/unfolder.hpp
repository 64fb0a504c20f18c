#pragma once

#include <map>
#include <set>
#include <vector>

#include "packedsem/packer.hpp"

namespace packedsem {

/// One reading recovered from a packed representation: the solved form
/// over the root variable and the disjunct chosen per name.
struct Solution {
    SolvedForm binding;
    std::map<Name, std::size_t> choices;
};

struct EnumOptions {
    std::uint64_t cap = 100000;
    /// A name's choice is made once per solution path and reused on
    /// re-encounter. Disabling this is for analysis only: the solution
    /// multiset may then contain duplicates, though its set of bindings
    /// is unchanged.
    bool memoize_choices = true;
};

/// Depth-first expansion of the goal over the environment, solving
/// equations incrementally and pruning unsatisfiable branches. Yields
/// each satisfiable total choice exactly once.
std::vector<Solution> enumerate_solutions(const PackedResult& p, EnumOptions options = {});
std::vector<Solution> enumerate_solutions(const SolvedForm& sem, const Constraint& goal,
                                          const Env& env, EnumOptions options = {});

/// Project every solution onto the given variables; tuples are
/// deduplicated up to renaming and returned in canonical order. Throws
/// std::invalid_argument if a variable does not occur in the packed
/// result.
std::vector<std::vector<Term>> query_bindings(const PackedResult& p,
                                              std::span<const VarId> vars);

struct OracleBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleOptions {
    std::uint64_t max_readings = 1000;
};

/// Brute force per tree: enumerate the forest's readings, conjoin every
/// leaf and rule constraint of each tree, solve, and collect the
/// canonical root bindings. Refuses forests beyond max_readings.
std::set<Term> oracle_per_tree(const Forest& f, const SemGrammar& grammar,
                               OracleOptions options = {});

/// Same, over the subforest at a node and a caller-supplied
/// instantiation (shared with a packing run when checking its
/// invariants).
std::set<Term> oracle_forms(const Forest& f, NodeId from, const SemInstantiation& inst,
                            std::uint64_t max_readings);

struct EquivReport {
    bool equal = false;
    std::vector<Term> missing;  // oracle forms no solution produced
    std::vector<Term> extra;    // solution forms outside the oracle set
};

/// Set equality of canonical root bindings between the packed result's
/// solutions and the per-tree oracle.
EquivReport equiv_check(const PackedResult& p, const std::set<Term>& oracle,
                        EnumOptions options = {});

}  // namespace packedsem

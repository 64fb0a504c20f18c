#pragma once

#include <optional>
#include <vector>

#include "packedsem/constraint.hpp"
#include "packedsem/forest.hpp"

namespace packedsem {

/// Per-node semantic variables. An OR node shares one variable with all
/// of its children; all other nodes get distinct variables.
struct NodeVarMap {
    std::vector<VarId> var;
    VarId of(NodeId id) const { return var.at(id); }
};

NodeVarMap assign_vars(const Forest& f, VarSupply& fresh);

/// Counters for the numbered constants minted at leaf instantiation
/// (x1, x2, ... / e1, ... / l1, ...), advancing left to right over the
/// leaves.
struct GenCounters {
    std::uint64_t referents = 0;
    std::uint64_t events = 0;
    std::uint64_t labels = 0;
    Term next(GenClass cls);
};

struct MissingLexemeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Instantiate the leaf template for a leaf node: template variables
/// rename fresh, generator variables become numbered constants, and the
/// result binds the leaf's semantic variable to the value pattern.
SolvedForm leaf_constraint(const Forest& f, NodeId leaf, const NodeVarMap& vars,
                           const SemGrammar& grammar, VarSupply& fresh,
                           GenCounters& counters);

/// Instantiate the rule template for an AND node: one shared fresh
/// renaming over the mother and child patterns, yielding equations for
/// the node's variable and each child's.
std::vector<Equation> rule_constraint(const Forest& f, NodeId and_node,
                                      const NodeVarMap& vars, const SemGrammar& grammar,
                                      VarSupply& fresh);

/// All per-node constraints of a forest under one variable assignment:
/// what both the packer and the per-tree oracle consume. Leaves are
/// instantiated left to right so generated constants are deterministic.
struct SemInstantiation {
    NodeVarMap vars;
    std::vector<std::optional<SolvedForm>> leaf_sem;  // by node id
    std::vector<std::vector<Equation>> rule_eqs;      // by node id
};

SemInstantiation instantiate(const Forest& f, const SemGrammar& grammar,
                             VarSupply& fresh);

/// Constructors of the UDRS constraint vocabulary used by the demo
/// grammar: subordination, labeled conditions, referent introduction and
/// the generalized-quantifier form.
namespace udrs {

Term lt(Term lower, Term upper);
Term cond(Term label, Term predicate);
Term ref(Term label, Term referent);
Term gen_quant(Term label, Term referent, Term restrictor, Term scope);

}  // namespace udrs

}  // namespace packedsem

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "packedsem/constraint.hpp"
#include "packedsem/forest.hpp"
#include "packedsem/semgrammar.hpp"

namespace packedsem {

/// How an OR node over more than two alternatives is generalised: in one
/// n-ary step, or by folding the binary operation left to right. Both
/// yield solution-set-equivalent packings.
enum class OrMode { NaryGeneralise, BinaryFold };

struct PackOptions {
    OrMode or_mode = OrMode::NaryGeneralise;
};

/// Raised when constraint solving fails during packing. The packer
/// assumes monotone semantic construction where rules never fail; a
/// grammar that violates that assumption is reported with the offending
/// node and rule.
struct PackFailure : std::runtime_error {
    PackFailure(std::string message, NodeId node, RuleId rule)
        : std::runtime_error(std::move(message)), node(node), rule(rule) {}
    NodeId node;
    RuleId rule;
};

/// Per-node results of the packing pass, each written exactly once in
/// bottom-up order.
struct PackWork {
    std::vector<std::optional<SolvedForm>> sem;
    std::vector<std::optional<Constraint>> d;
};

/// The packed semantic representation: a conjunctive core on the root
/// variable, a goal that is true or a single name use, and the
/// environment of named (possibly disjunctive) definitions. Reading the
/// goal's expansion together with the core recovers the union of all
/// tree readings' semantics.
struct PackedResult {
    SolvedForm sem_root;
    Constraint d_root;
    Env env;
    SemInstantiation inst;  // node variables retained for querying
    PackWork work;

    const NodeVarMap& vars() const { return inst.vars; }
};

/// One bottom-up pass over the forest: leaves take their lexical
/// constraint, AND nodes solve the rule constraint against the children,
/// OR nodes generalise the alternatives and push the remainders into the
/// environment.
PackedResult pack(const Forest& f, const SemGrammar& grammar, PackOptions options = {});

struct InvariantReport {
    std::vector<std::string> violations;
    std::size_t nodes_checked = 0;
    bool ok() const { return violations.empty(); }
};

/// Check the packing invariants: (1) every name used has exactly one,
/// earlier definition; (2) per node, the packed pair is equivalent to
/// the node's per-tree semantics, compared by expansion and solution
/// sets (skipped for nodes whose subforest exceeds reading_bound);
/// (3) per node, the packed core is no larger than the smallest
/// single-tree solved form.
InvariantReport check_invariants(const PackedResult& p, const Forest& f,
                                 const SemGrammar& grammar,
                                 std::uint64_t reading_bound = 100);

}  // namespace packedsem

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace packedsem {

using VarId = std::uint64_t;

/// Monotone source of globally fresh variable identifiers. The single
/// mutable object of the term layer; everything else is immutable and
/// safe to share across threads. Synchronize externally or keep one
/// supply per computation.
class VarSupply {
public:
    VarId fresh() { return next_++; }
    VarId next_id() const { return next_; }

private:
    VarId next_ = 0;
};

/// First-order term: a variable or a functor application. Constants are
/// zero-ary applications. Arity is part of functor identity (f/1 and f/2
/// are unrelated symbols). Terms are immutable values with structural
/// equality; copies share the underlying nodes.
class Term {
public:
    static Term var(VarId id);
    static Term app(std::string functor, std::vector<Term> args = {});
    static Term constant(std::string name) { return app(std::move(name)); }

    // Prolog-style list cells, used by the list sugar in the text syntax.
    static Term nil();
    static Term cons(Term head, Term tail);
    static Term list(std::vector<Term> items);
    static Term list(std::vector<Term> items, Term tail);

    bool is_var() const;
    bool is_app() const;
    VarId var_id() const;
    const std::string& functor() const;
    const std::vector<Term>& args() const;
    std::size_t arity() const;

    /// Node count, variables and applications both counting 1.
    std::size_t size() const;
    std::size_t hash() const;

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }
    bool operator<(const Term& other) const;

    /// Identity of the underlying node; stable for the lifetime of any
    /// Term sharing it. Used for memo tables and DOT export of shared
    /// structure.
    const void* node_ptr() const;

    struct Node;

private:
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Idempotent variable bindings: no variable in the domain occurs in any
/// range term, so applying twice equals applying once.
class Substitution {
public:
    Substitution() = default;

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    bool contains(VarId v) const { return bindings_.count(v) != 0; }
    const Term* lookup(VarId v) const;
    const std::map<VarId, Term>& bindings() const { return bindings_; }

    /// Replace every domain variable in t by its binding (one pass;
    /// idempotence makes that a fixpoint).
    Term apply(const Term& t) const;

    bool operator==(const Substitution& other) const;
    bool operator!=(const Substitution& other) const { return !(*this == other); }

    /// Build from raw bindings, normalizing to idempotent form. Throws
    /// std::invalid_argument if the bindings are cyclic.
    static Substitution from_bindings(const std::map<VarId, Term>& raw);

    /// Bindings already known to be idempotent (caller's obligation).
    static Substitution from_idempotent(std::map<VarId, Term> bindings);

private:
    std::map<VarId, Term> bindings_;
};

Term apply(const Substitution& s, const Term& t);

/// Most general unifier of t1 and t2 extending seed, or nullopt on
/// functor/arity clash or occurs-check violation. The occurs check is
/// always on; failure is a normal result, not an error.
std::optional<Substitution> unify(const Term& t1, const Term& t2,
                                  const Substitution& seed = {});

struct AntiUnification {
    Term general;
    Substitution left;   // maps general onto the first input
    Substitution right;  // maps general onto the second input
};

/// Least general generalization (Plotkin lgg) of two terms. Identical
/// disagreement pairs map to the same fresh variable, drawn from the
/// shared supply so results never capture variables of other terms.
AntiUnification anti_unify(const Term& t1, const Term& t2, VarSupply& fresh);

struct AntiUnificationN {
    Term general;
    std::vector<Substitution> witnesses;  // one per input
};

/// n-ary least general generalization; equals the left fold of the
/// binary operation up to variable renaming.
AntiUnificationN anti_unify_n(std::span<const Term> terms, VarSupply& fresh);

/// Rename variables to 0, 1, ... in first-occurrence (depth-first,
/// left-to-right) order. Idempotent and invariant under injective
/// renaming of the input's variables; the result lives in its own
/// identifier space and is meant for comparison and display only.
Term canonical_form(const Term& t);

std::size_t term_size(const Term& t);

/// Distinct variables of t in first-occurrence (depth-first) order.
std::vector<VarId> variables_of(const Term& t);

}  // namespace packedsem

template <>
struct std::hash<packedsem::Term> {
    std::size_t operator()(const packedsem::Term& t) const { return t.hash(); }
};

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "packedsem/term.hpp"

namespace packedsem {

/// Names form a second variable set used to abbreviate complex
/// constraints; a name is defined at most once and only ever refers to
/// earlier definitions.
struct Name {
    std::uint64_t value = 0;
    auto operator<=>(const Name&) const = default;
};

class NameSupply {
public:
    Name fresh() { return Name{next_++}; }

private:
    std::uint64_t next_ = 0;
};

struct Equation {
    Term lhs;
    Term rhs;
    bool operator==(const Equation& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

/// Constraint over first-order terms: true, an equation, a conjunction,
/// a disjunction, or a name use. Immutable; construction normalizes
/// (conjunctions flatten and drop true, both connectives need at least
/// two parts, singletons unwrap).
class Constraint {
public:
    enum class Kind { True, Eq, Conj, Disj, Use };

    static Constraint truth();
    static Constraint eq(Term lhs, Term rhs);
    static Constraint conj(std::vector<Constraint> parts);
    static Constraint disj(std::vector<Constraint> alternatives);
    static Constraint use(Name n);

    Kind kind() const;
    bool is_true() const { return kind() == Kind::True; }
    const Equation& equation() const;
    const std::vector<Constraint>& parts() const;
    Name name() const;

    bool operator==(const Constraint& other) const;
    bool operator!=(const Constraint& other) const { return !(*this == other); }

private:
    struct Rep;
    explicit Constraint(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

/// Flattened conjunction with true units removed; empty list yields
/// true, a single remaining part is returned unwrapped.
Constraint conjoin(std::vector<Constraint> parts);

/// Flattened disjunction; a single alternative is returned unwrapped.
/// The empty disjunction (false) is not part of the language.
Constraint disjoin(std::vector<Constraint> alternatives);

/// Append-only environment of named constraint definitions. Definitions
/// may only use names defined earlier, so expansion always terminates.
class Env {
public:
    void define(Name n, Constraint body);
    const Constraint* lookup(Name n) const;
    bool defines(Name n) const { return lookup(n) != nullptr; }
    std::size_t size() const { return defs_.size(); }
    bool empty() const { return defs_.empty(); }
    const std::vector<std::pair<Name, Constraint>>& definitions() const {
        return defs_;
    }

private:
    std::vector<std::pair<Name, Constraint>> defs_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct UndefinedNameError : std::runtime_error {
    UndefinedNameError(Name n, std::string message)
        : std::runtime_error(std::move(message)), name(n) {}
    Name name;
};

/// Normal form of a satisfiable conjunction of equations: an idempotent
/// substitution together with the distinguished root variable the form
/// describes. Every other variable is read as implicitly existentially
/// bound at the formula toplevel.
class SolvedForm {
public:
    explicit SolvedForm(VarId root) : root_(root) {}
    SolvedForm(VarId root, Substitution binding)
        : root_(root), binding_(std::move(binding)) {}

    VarId root() const { return root_; }
    const Substitution& binding() const { return binding_; }
    bool unconstrained() const { return binding_.empty(); }

    /// The binding of the root variable (the root variable itself when
    /// unbound).
    Term root_binding() const;

    /// The form as a list of equations, ascending by variable.
    std::vector<Equation> equations() const;

    SolvedForm with_root(VarId root) const { return SolvedForm(root, binding_); }

private:
    VarId root_;
    Substitution binding_;
};

/// Extend seed with the given equations by iterated unification;
/// nullopt when the conjunction is unsatisfiable.
std::optional<SolvedForm> solve(std::span<const Equation> eqs, const SolvedForm& seed);

struct Generalisation {
    SolvedForm common;
    Constraint remainder_left;
    Constraint remainder_right;
};

/// Factor two solved forms over the same root into a common part and
/// per-side remainders: each input is equivalent to common plus its
/// remainder. The common part anti-unifies the two root bindings; the
/// remainders are flat equation conjunctions over the fresh variables.
Generalisation generalise(const SolvedForm& a, const SolvedForm& b, VarSupply& fresh);

struct GeneralisationN {
    SolvedForm common;
    std::vector<Constraint> remainders;
};

GeneralisationN generalise_n(std::span<const SolvedForm> forms, VarSupply& fresh);

/// Recursively replace name uses by their definitions. Exponential in
/// general; intended for oracles and tests only. Throws
/// UndefinedNameError on a use without a definition.
Constraint expand(const Constraint& c, const Env& env);

}  // namespace packedsem

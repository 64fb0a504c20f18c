#include "packedsem/term.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace packedsem {

struct Term::Node {
    bool is_var;
    VarId var;
    std::string functor;
    std::vector<Term> args;
    std::size_t hash;
    std::size_t size;
};

namespace {

std::size_t hash_mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(VarId id) {
    auto node = std::make_shared<Node>();
    node->is_var = true;
    node->var = id;
    node->hash = hash_mix(0x5f3e, std::hash<VarId>{}(id));
    node->size = 1;
    return Term(std::move(node));
}

Term Term::app(std::string functor, std::vector<Term> args) {
    if (functor.empty()) {
        throw std::invalid_argument("term functor must be nonempty");
    }
    auto node = std::make_shared<Node>();
    node->is_var = false;
    node->var = 0;
    std::size_t h = hash_mix(std::hash<std::string>{}(functor), args.size());
    std::size_t sz = 1;
    for (const Term& a : args) {
        h = hash_mix(h, a.hash());
        sz += a.size();
    }
    node->functor = std::move(functor);
    node->args = std::move(args);
    node->hash = h;
    node->size = sz;
    return Term(std::move(node));
}

Term Term::nil() {
    static const Term n = Term::app("[]");
    return n;
}

Term Term::cons(Term head, Term tail) {
    std::vector<Term> args;
    args.reserve(2);
    args.push_back(std::move(head));
    args.push_back(std::move(tail));
    return Term::app(".", std::move(args));
}

Term Term::list(std::vector<Term> items) { return list(std::move(items), nil()); }

Term Term::list(std::vector<Term> items, Term tail) {
    Term out = std::move(tail);
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
        out = cons(std::move(*it), std::move(out));
    }
    return out;
}

bool Term::is_var() const { return node_->is_var; }
bool Term::is_app() const { return !node_->is_var; }

VarId Term::var_id() const {
    if (!node_->is_var) throw std::logic_error("var_id() on application term");
    return node_->var;
}

const std::string& Term::functor() const {
    if (node_->is_var) throw std::logic_error("functor() on variable term");
    return node_->functor;
}

const std::vector<Term>& Term::args() const {
    if (node_->is_var) throw std::logic_error("args() on variable term");
    return node_->args;
}

std::size_t Term::arity() const { return args().size(); }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }
const void* Term::node_ptr() const { return node_.get(); }

bool Term::operator==(const Term& other) const {
    if (node_ == other.node_) return true;
    if (node_->hash != other.node_->hash) return false;
    if (node_->is_var != other.node_->is_var) return false;
    if (node_->is_var) return node_->var == other.node_->var;
    if (node_->functor != other.node_->functor) return false;
    if (node_->args.size() != other.node_->args.size()) return false;
    for (std::size_t i = 0; i < node_->args.size(); ++i) {
        if (!(node_->args[i] == other.node_->args[i])) return false;
    }
    return true;
}

bool Term::operator<(const Term& other) const {
    if (node_ == other.node_) return false;
    if (node_->is_var != other.node_->is_var) return node_->is_var;  // vars first
    if (node_->is_var) return node_->var < other.node_->var;
    if (node_->functor != other.node_->functor) return node_->functor < other.node_->functor;
    if (node_->args.size() != other.node_->args.size()) {
        return node_->args.size() < other.node_->args.size();
    }
    for (std::size_t i = 0; i < node_->args.size(); ++i) {
        if (node_->args[i] < other.node_->args[i]) return true;
        if (other.node_->args[i] < node_->args[i]) return false;
    }
    return false;
}

const Term* Substitution::lookup(VarId v) const {
    auto it = bindings_.find(v);
    return it == bindings_.end() ? nullptr : &it->second;
}

bool Substitution::operator==(const Substitution& other) const {
    return bindings_ == other.bindings_;
}

namespace {

/// One-pass application with a per-call memo keyed by node identity, so
/// shared subterms are rewritten once and stay shared.
class Applier {
public:
    explicit Applier(const std::map<VarId, Term>& bindings) : bindings_(bindings) {}

    Term operator()(const Term& t) {
        if (t.is_var()) {
            auto it = bindings_.find(t.var_id());
            return it == bindings_.end() ? t : it->second;
        }
        if (t.args().empty()) return t;
        auto hit = memo_.find(t.node_ptr());
        if (hit != memo_.end()) return hit->second;
        bool changed = false;
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) {
            Term r = (*this)(a);
            if (r.node_ptr() != a.node_ptr()) changed = true;
            args.push_back(std::move(r));
        }
        Term out = changed ? Term::app(t.functor(), std::move(args)) : t;
        memo_.emplace(t.node_ptr(), out);
        return out;
    }

private:
    const std::map<VarId, Term>& bindings_;
    std::unordered_map<const void*, Term> memo_;
};

/// Deep resolution of possibly triangular bindings into idempotent form.
/// Detects cycles (which unify() already rules out via the occurs check).
class Resolver {
public:
    explicit Resolver(const std::map<VarId, Term>& raw) : raw_(raw) {}

    Term resolve_var(VarId v) {
        auto done = resolved_.find(v);
        if (done != resolved_.end()) return done->second;
        if (!in_progress_.insert(v).second) {
            throw std::invalid_argument("cyclic bindings in substitution");
        }
        auto it = raw_.find(v);
        Term out = it == raw_.end() ? Term::var(v) : resolve(it->second);
        in_progress_.erase(v);
        resolved_.emplace(v, out);
        return out;
    }

    Term resolve(const Term& t) {
        if (t.is_var()) return resolve_var(t.var_id());
        if (t.args().empty()) return t;
        auto hit = memo_.find(t.node_ptr());
        if (hit != memo_.end()) return hit->second;
        bool changed = false;
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) {
            Term r = resolve(a);
            if (r.node_ptr() != a.node_ptr()) changed = true;
            args.push_back(std::move(r));
        }
        Term out = changed ? Term::app(t.functor(), std::move(args)) : t;
        memo_.emplace(t.node_ptr(), out);
        return out;
    }

private:
    const std::map<VarId, Term>& raw_;
    std::map<VarId, Term> resolved_;
    std::unordered_set<VarId> in_progress_;
    std::unordered_map<const void*, Term> memo_;
};

}  // namespace

Term Substitution::apply(const Term& t) const {
    if (bindings_.empty()) return t;
    return Applier(bindings_)(t);
}

Substitution Substitution::from_bindings(const std::map<VarId, Term>& raw) {
    Resolver resolver(raw);
    std::map<VarId, Term> out;
    for (const auto& [v, unused] : raw) {
        Term r = resolver.resolve_var(v);
        if (r.is_var() && r.var_id() == v) continue;  // self binding, drop
        out.emplace(v, std::move(r));
    }
    Substitution s;
    s.bindings_ = std::move(out);
    return s;
}

Substitution Substitution::from_idempotent(std::map<VarId, Term> bindings) {
    Substitution s;
    s.bindings_ = std::move(bindings);
    return s;
}

Term apply(const Substitution& s, const Term& t) { return s.apply(t); }

namespace {

Term walk(Term t, const std::map<VarId, Term>& bindings) {
    while (t.is_var()) {
        auto it = bindings.find(t.var_id());
        if (it == bindings.end()) return t;
        t = it->second;
    }
    return t;
}

bool occurs(VarId v, const Term& t, const std::map<VarId, Term>& bindings,
            std::unordered_set<const void*>& seen) {
    Term w = walk(t, bindings);
    if (w.is_var()) return w.var_id() == v;
    if (!seen.insert(w.node_ptr()).second) return false;
    for (const Term& a : w.args()) {
        if (occurs(v, a, bindings, seen)) return true;
    }
    return false;
}

}  // namespace

std::optional<Substitution> unify(const Term& t1, const Term& t2,
                                  const Substitution& seed) {
    std::map<VarId, Term> work = seed.bindings();
    std::vector<std::pair<Term, Term>> todo;
    todo.emplace_back(t1, t2);
    while (!todo.empty()) {
        auto [a, b] = std::move(todo.back());
        todo.pop_back();
        Term x = walk(std::move(a), work);
        Term y = walk(std::move(b), work);
        if (x.is_var() && y.is_var()) {
            if (x.var_id() == y.var_id()) continue;
            // Orient young-to-old so shared older structure survives as
            // the representative.
            if (x.var_id() < y.var_id()) std::swap(x, y);
            work.emplace(x.var_id(), y);
            continue;
        }
        if (x.is_var() || y.is_var()) {
            if (y.is_var()) std::swap(x, y);
            std::unordered_set<const void*> seen;
            if (occurs(x.var_id(), y, work, seen)) return std::nullopt;
            work.emplace(x.var_id(), std::move(y));
            continue;
        }
        if (x.node_ptr() == y.node_ptr()) continue;
        if (x.functor() != y.functor() || x.arity() != y.arity()) return std::nullopt;
        for (std::size_t i = x.arity(); i-- > 0;) {
            todo.emplace_back(x.args()[i], y.args()[i]);
        }
    }
    return Substitution::from_bindings(work);
}

namespace {

struct PairKey {
    Term a, b;
    bool operator==(const PairKey& o) const { return a == o.a && b == o.b; }
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const {
        return hash_mix(k.a.hash(), k.b.hash());
    }
};

struct PtrPairHash {
    std::size_t operator()(const std::pair<const void*, const void*>& p) const {
        return hash_mix(std::hash<const void*>{}(p.first),
                        std::hash<const void*>{}(p.second));
    }
};

class BinaryGeneralizer {
public:
    explicit BinaryGeneralizer(VarSupply& fresh) : fresh_(fresh) {}

    Term go(const Term& a, const Term& b) {
        auto ptr_key = std::make_pair(a.node_ptr(), b.node_ptr());
        auto hit = ptr_memo_.find(ptr_key);
        if (hit != ptr_memo_.end()) return hit->second;
        Term out = compute(a, b);
        ptr_memo_.emplace(ptr_key, out);
        return out;
    }

    std::map<VarId, Term> left, right;

private:
    Term compute(const Term& a, const Term& b) {
        if (a == b) return a;
        if (a.is_app() && b.is_app() && a.functor() == b.functor() &&
            a.arity() == b.arity()) {
            std::vector<Term> args;
            args.reserve(a.arity());
            for (std::size_t i = 0; i < a.arity(); ++i) {
                args.push_back(go(a.args()[i], b.args()[i]));
            }
            return Term::app(a.functor(), std::move(args));
        }
        PairKey key{a, b};
        auto found = pair_table_.find(key);
        if (found != pair_table_.end()) return found->second;
        Term v = Term::var(fresh_.fresh());
        pair_table_.emplace(std::move(key), v);
        left.emplace(v.var_id(), a);
        right.emplace(v.var_id(), b);
        return v;
    }

    VarSupply& fresh_;
    std::unordered_map<PairKey, Term, PairKeyHash> pair_table_;
    std::unordered_map<std::pair<const void*, const void*>, Term, PtrPairHash> ptr_memo_;
};

struct TupleKey {
    std::vector<Term> terms;
    bool operator==(const TupleKey& o) const { return terms == o.terms; }
};

struct TupleKeyHash {
    std::size_t operator()(const TupleKey& k) const {
        std::size_t h = k.terms.size();
        for (const Term& t : k.terms) h = hash_mix(h, t.hash());
        return h;
    }
};

struct PtrTupleHash {
    std::size_t operator()(const std::vector<const void*>& v) const {
        std::size_t h = v.size();
        for (const void* p : v) h = hash_mix(h, std::hash<const void*>{}(p));
        return h;
    }
};

class NaryGeneralizer {
public:
    NaryGeneralizer(VarSupply& fresh, std::size_t width)
        : fresh_(fresh), witnesses(width) {}

    Term go(const std::vector<Term>& column) {
        std::vector<const void*> ptr_key;
        ptr_key.reserve(column.size());
        for (const Term& t : column) ptr_key.push_back(t.node_ptr());
        auto hit = ptr_memo_.find(ptr_key);
        if (hit != ptr_memo_.end()) return hit->second;
        Term out = compute(column);
        ptr_memo_.emplace(std::move(ptr_key), out);
        return out;
    }

    std::vector<std::map<VarId, Term>> witnesses;

private:
    Term compute(const std::vector<Term>& column) {
        const Term& first = column.front();
        bool all_equal = true;
        for (std::size_t i = 1; i < column.size() && all_equal; ++i) {
            all_equal = column[i] == first;
        }
        if (all_equal) return first;
        bool aligned = first.is_app();
        for (std::size_t i = 1; i < column.size() && aligned; ++i) {
            aligned = column[i].is_app() && column[i].functor() == first.functor() &&
                      column[i].arity() == first.arity();
        }
        if (aligned) {
            std::vector<Term> args;
            args.reserve(first.arity());
            for (std::size_t j = 0; j < first.arity(); ++j) {
                std::vector<Term> sub;
                sub.reserve(column.size());
                for (const Term& t : column) sub.push_back(t.args()[j]);
                args.push_back(go(sub));
            }
            return Term::app(first.functor(), std::move(args));
        }
        TupleKey key{column};
        auto found = tuple_table_.find(key);
        if (found != tuple_table_.end()) return found->second;
        Term v = Term::var(fresh_.fresh());
        tuple_table_.emplace(std::move(key), v);
        for (std::size_t i = 0; i < column.size(); ++i) {
            witnesses[i].emplace(v.var_id(), column[i]);
        }
        return v;
    }

    VarSupply& fresh_;
    std::unordered_map<TupleKey, Term, TupleKeyHash> tuple_table_;
    std::unordered_map<std::vector<const void*>, Term, PtrTupleHash> ptr_memo_;
};

}  // namespace

AntiUnification anti_unify(const Term& t1, const Term& t2, VarSupply& fresh) {
    BinaryGeneralizer gen(fresh);
    Term g = gen.go(t1, t2);
    return AntiUnification{std::move(g),
                           Substitution::from_idempotent(std::move(gen.left)),
                           Substitution::from_idempotent(std::move(gen.right))};
}

AntiUnificationN anti_unify_n(std::span<const Term> terms, VarSupply& fresh) {
    if (terms.empty()) {
        throw std::invalid_argument("anti_unify_n requires a nonempty list");
    }
    if (terms.size() == 1) {
        return AntiUnificationN{terms.front(), {Substitution{}}};
    }
    NaryGeneralizer gen(fresh, terms.size());
    Term g = gen.go(std::vector<Term>(terms.begin(), terms.end()));
    AntiUnificationN out{std::move(g), {}};
    out.witnesses.reserve(terms.size());
    for (auto& w : gen.witnesses) {
        out.witnesses.push_back(Substitution::from_idempotent(std::move(w)));
    }
    return out;
}

namespace {

void collect_ranks(const Term& t, std::map<VarId, VarId>& ranks,
                   std::unordered_set<const void*>& seen) {
    if (t.is_var()) {
        ranks.emplace(t.var_id(), ranks.size());
        return;
    }
    if (!seen.insert(t.node_ptr()).second) return;
    for (const Term& a : t.args()) collect_ranks(a, ranks, seen);
}

Term rebuild_ranked(const Term& t, const std::map<VarId, VarId>& ranks,
                    std::unordered_map<const void*, Term>& memo) {
    if (t.is_var()) return Term::var(ranks.at(t.var_id()));
    if (t.args().empty()) return t;
    auto hit = memo.find(t.node_ptr());
    if (hit != memo.end()) return hit->second;
    bool changed = false;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) {
        Term r = rebuild_ranked(a, ranks, memo);
        if (r.node_ptr() != a.node_ptr()) changed = true;
        args.push_back(std::move(r));
    }
    Term out = changed ? Term::app(t.functor(), std::move(args)) : t;
    memo.emplace(t.node_ptr(), out);
    return out;
}

}  // namespace

Term canonical_form(const Term& t) {
    std::map<VarId, VarId> ranks;
    std::unordered_set<const void*> seen;
    collect_ranks(t, ranks, seen);
    std::unordered_map<const void*, Term> memo;
    return rebuild_ranked(t, ranks, memo);
}

std::size_t term_size(const Term& t) { return t.size(); }

namespace {

void collect_vars_impl(const Term& t, std::vector<VarId>& out,
                       std::unordered_set<VarId>& seen_vars,
                       std::unordered_set<const void*>& seen_nodes) {
    if (t.is_var()) {
        if (seen_vars.insert(t.var_id()).second) out.push_back(t.var_id());
        return;
    }
    if (!seen_nodes.insert(t.node_ptr()).second) return;
    for (const Term& a : t.args()) collect_vars_impl(a, out, seen_vars, seen_nodes);
}

}  // namespace

std::vector<VarId> variables_of(const Term& t) {
    std::vector<VarId> out;
    std::unordered_set<VarId> seen_vars;
    std::unordered_set<const void*> seen_nodes;
    collect_vars_impl(t, out, seen_vars, seen_nodes);
    return out;
}

}  // namespace packedsem

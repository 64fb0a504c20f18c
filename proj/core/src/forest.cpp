#include "packedsem/forest.hpp"

#include <algorithm>
#include <functional>

namespace packedsem {

Node Node::leaf(std::string category, std::string token, Span span) {
    Node n;
    n.kind = Kind::Leaf;
    n.category = std::move(category);
    n.token = std::move(token);
    n.span = span;
    return n;
}

Node Node::and_node(std::string category, RuleId rule, std::vector<NodeId> children,
                    Span span) {
    Node n;
    n.kind = Kind::And;
    n.category = std::move(category);
    n.rule = rule;
    n.children = std::move(children);
    n.span = span;
    return n;
}

Node Node::or_node(std::vector<NodeId> children, Span span) {
    Node n;
    n.kind = Kind::Or;
    n.children = std::move(children);
    n.span = span;
    return n;
}

NodeId Forest::add(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
}

const std::string& Forest::category_of(NodeId id) const {
    const Node& n = node(id);
    if (n.kind != Node::Kind::Or) return n.category;
    if (n.children.empty()) return n.category;
    return category_of(n.children.front());
}

std::vector<std::string> Forest::yield_of(NodeId id) const {
    std::vector<std::string> out;
    std::function<void(NodeId)> walk = [&](NodeId cur) {
        const Node& n = node(cur);
        switch (n.kind) {
            case Node::Kind::Leaf:
                out.push_back(n.token);
                return;
            case Node::Kind::Or:
                if (!n.children.empty()) walk(n.children.front());
                return;
            case Node::Kind::And:
                for (NodeId c : n.children) walk(c);
                return;
        }
    };
    walk(id);
    return out;
}

namespace {

enum class Mark : std::uint8_t { White, Grey, Black };

bool postorder_from(const Forest& f, NodeId start, std::vector<Mark>& marks,
                    std::vector<NodeId>& out) {
    // Iterative DFS; the second visit of a frame emits the node.
    std::vector<std::pair<NodeId, bool>> stack{{start, false}};
    while (!stack.empty()) {
        auto [id, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            marks[id] = Mark::Black;
            out.push_back(id);
            continue;
        }
        if (marks[id] == Mark::Black) continue;
        if (marks[id] == Mark::Grey) return false;
        marks[id] = Mark::Grey;
        stack.emplace_back(id, true);
        const Node& n = f.node(id);
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
            if (marks[*it] == Mark::Grey) return false;
            if (marks[*it] == Mark::White) stack.emplace_back(*it, false);
        }
    }
    return true;
}

}  // namespace

std::vector<NodeId> bottom_up_order(const Forest& f) {
    if (f.size() == 0) return {};
    std::vector<Mark> marks(f.size(), Mark::White);
    std::vector<NodeId> out;
    out.reserve(f.size());
    if (!postorder_from(f, f.root(), marks, out)) {
        throw CycleError("forest contains a cycle");
    }
    return out;
}

std::vector<Violation> validate(const Forest& f, const BackboneGrammar& g) {
    std::vector<Violation> out;
    if (f.size() == 0) {
        out.push_back({0, "forest is empty"});
        return out;
    }
    for (NodeId id = 0; id < f.size(); ++id) {
        for (NodeId c : f.node(id).children) {
            if (c >= f.size()) {
                out.push_back({id, "child id out of range"});
                return out;
            }
        }
    }

    std::vector<Mark> marks(f.size(), Mark::White);
    std::vector<NodeId> order;
    if (!postorder_from(f, f.root(), marks, order)) {
        out.push_back({f.root(), "forest contains a cycle"});
        return out;
    }
    for (NodeId id = 0; id < f.size(); ++id) {
        if (marks[id] == Mark::White) {
            out.push_back({id, "node unreachable from root"});
        }
    }

    for (NodeId id : order) {
        const Node& n = f.node(id);
        switch (n.kind) {
            case Node::Kind::Leaf: {
                if (!n.children.empty()) {
                    out.push_back({id, "leaf with children"});
                }
                if (n.span.length() != 1) {
                    out.push_back({id, "leaf span must cover one token"});
                }
                if (!g.lookup(n.token, n.category)) {
                    out.push_back({id, "token '" + n.token + "' has no lexicon entry as " +
                                           n.category});
                }
                break;
            }
            case Node::Kind::And: {
                if (n.children.empty()) {
                    out.push_back({id, "AND node without children"});
                    break;
                }
                std::uint32_t pos = n.span.begin;
                for (NodeId c : n.children) {
                    if (f.node(c).span.begin != pos) {
                        out.push_back({id, "child spans do not concatenate"});
                        break;
                    }
                    pos = f.node(c).span.end;
                }
                if (pos != n.span.end) {
                    out.push_back({id, "child spans do not cover the node span"});
                }
                bool rule_ok = n.rule < g.rules().size();
                if (rule_ok) {
                    const Rule& r = g.rule(n.rule);
                    rule_ok = r.lhs == n.category && r.rhs.size() == n.children.size();
                    if (rule_ok) {
                        for (std::size_t i = 0; i < n.children.size(); ++i) {
                            rule_ok = rule_ok &&
                                      f.category_of(n.children[i]) == r.rhs[i];
                        }
                    }
                }
                if (!rule_ok) {
                    out.push_back({id, "AND node does not instantiate a grammar rule"});
                }
                break;
            }
            case Node::Kind::Or: {
                if (n.children.size() < 2) {
                    out.push_back({id, "OR node needs at least two children"});
                    break;
                }
                const std::string& cat = f.category_of(n.children.front());
                std::vector<std::string> yield = f.yield_of(n.children.front());
                for (NodeId c : n.children) {
                    if (f.node(c).kind == Node::Kind::Or) {
                        out.push_back({id, "OR node child is an OR node"});
                    }
                    if (f.category_of(c) != cat) {
                        out.push_back({id, "OR children differ in category"});
                    }
                    if (!(f.node(c).span == n.span)) {
                        out.push_back({id, "OR child span differs from node span"});
                    }
                    if (f.yield_of(c) != yield) {
                        out.push_back({id, "OR children differ in terminal yield"});
                    }
                }
                break;
            }
        }
    }
    return out;
}

BigInt readings_count(const Forest& f, NodeId from) {
    std::vector<BigInt> memo(f.size(), BigInt(-1));
    std::function<BigInt(NodeId)> count = [&](NodeId id) -> BigInt {
        if (memo[id] >= 0) return memo[id];
        const Node& n = f.node(id);
        BigInt result;
        switch (n.kind) {
            case Node::Kind::Leaf:
                result = 1;
                break;
            case Node::Kind::And: {
                result = 1;
                for (NodeId c : n.children) result *= count(c);
                break;
            }
            case Node::Kind::Or: {
                result = 0;
                for (NodeId c : n.children) result += count(c);
                break;
            }
        }
        memo[id] = result;
        return result;
    };
    return count(from);
}

BigInt readings_count(const Forest& f) { return readings_count(f, f.root()); }

namespace {

/// OR nodes reachable from start under the partial choices, in discovery
/// order; a chosen OR contributes only the chosen child.
std::vector<NodeId> unchosen_reachable_ors(const Forest& f, NodeId start,
                                           const std::map<NodeId, NodeId>& choices) {
    std::vector<NodeId> found;
    std::vector<bool> seen(f.size(), false);
    std::vector<NodeId> stack{start};
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        if (seen[id]) continue;
        seen[id] = true;
        const Node& n = f.node(id);
        if (n.kind == Node::Kind::Or) {
            auto it = choices.find(id);
            if (it == choices.end()) {
                found.push_back(id);
                continue;  // do not descend until chosen
            }
            stack.push_back(it->second);
            continue;
        }
        for (auto c = n.children.rbegin(); c != n.children.rend(); ++c) {
            stack.push_back(*c);
        }
    }
    return found;
}

void enumerate_impl(const Forest& f, NodeId start, std::uint64_t cap,
                    std::map<NodeId, NodeId>& choices, std::vector<Reading>& out) {
    if (out.size() >= cap) return;
    std::vector<NodeId> open = unchosen_reachable_ors(f, start, choices);
    if (open.empty()) {
        out.push_back(Reading{choices});
        return;
    }
    NodeId branch = open.front();
    for (NodeId child : f.node(branch).children) {
        choices[branch] = child;
        enumerate_impl(f, start, cap, choices, out);
        choices.erase(branch);
        if (out.size() >= cap) return;
    }
}

}  // namespace

std::vector<Reading> enumerate_readings(const Forest& f, NodeId from, std::uint64_t cap) {
    std::vector<Reading> out;
    std::map<NodeId, NodeId> choices;
    enumerate_impl(f, from, cap, choices, out);
    return out;
}

std::vector<Reading> enumerate_readings(const Forest& f, std::uint64_t cap) {
    return enumerate_readings(f, f.root(), cap);
}

std::vector<NodeId> reading_nodes(const Forest& f, const Reading& r, NodeId from) {
    std::vector<NodeId> out;
    std::vector<bool> seen(f.size(), false);
    std::function<void(NodeId)> walk = [&](NodeId id) {
        if (seen[id]) return;
        seen[id] = true;
        out.push_back(id);
        const Node& n = f.node(id);
        if (n.kind == Node::Kind::Or) {
            walk(r.choice.at(id));
            return;
        }
        for (NodeId c : n.children) walk(c);
    };
    walk(from);
    return out;
}

std::vector<std::set<NodeId>> must_occur_table(const Forest& f) {
    std::vector<std::set<NodeId>> table(f.size());
    for (NodeId id : bottom_up_order(f)) {
        const Node& n = f.node(id);
        if (n.kind == Node::Kind::Leaf) continue;
        if (n.kind == Node::Kind::And) {
            std::set<NodeId>& mine = table[id];
            for (NodeId c : n.children) {
                mine.insert(c);
                mine.insert(table[c].begin(), table[c].end());
            }
            continue;
        }
        // OR: intersection over children of ({child} and its set).
        bool first = true;
        std::set<NodeId> acc;
        for (NodeId c : n.children) {
            std::set<NodeId> with_child = table[c];
            with_child.insert(c);
            if (first) {
                acc = std::move(with_child);
                first = false;
            } else {
                std::set<NodeId> next;
                std::set_intersection(acc.begin(), acc.end(), with_child.begin(),
                                      with_child.end(),
                                      std::inserter(next, next.begin()));
                acc = std::move(next);
            }
        }
        table[id] = std::move(acc);
    }
    return table;
}

std::set<NodeId> must_occur(const Forest& f, NodeId node) {
    return must_occur_table(f).at(node);
}

NodeCounts node_counts(const Forest& f) {
    NodeCounts counts;
    for (const Node& n : f.nodes()) {
        switch (n.kind) {
            case Node::Kind::Leaf:
                ++counts.leaf_nodes;
                break;
            case Node::Kind::And:
                ++counts.and_nodes;
                break;
            case Node::Kind::Or:
                ++counts.or_nodes;
                break;
        }
    }
    return counts;
}

}  // namespace packedsem

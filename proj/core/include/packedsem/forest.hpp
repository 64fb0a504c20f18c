#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "packedsem/grammar.hpp"

namespace packedsem {

using NodeId = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

struct Span {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    bool operator==(const Span& o) const { return begin == o.begin && end == o.end; }
    std::uint32_t length() const { return end - begin; }
};

/// Forest node: a leaf (preterminal over one token), an AND node
/// (context-free branching via a grammar rule) or an OR node
/// (alternative subtrees of identical category and yield).
struct Node {
    enum class Kind { Leaf, And, Or };

    static Node leaf(std::string category, std::string token, Span span);
    static Node and_node(std::string category, RuleId rule,
                         std::vector<NodeId> children, Span span);
    static Node or_node(std::vector<NodeId> children, Span span);

    Kind kind = Kind::Leaf;
    std::string category;  // empty on OR nodes; use Forest::category_of
    std::string token;     // leaves only
    RuleId rule = 0;       // AND nodes only
    std::vector<NodeId> children;
    Span span;
};

/// Rooted AND-OR DAG over densely numbered nodes.
class Forest {
public:
    NodeId add(Node n);
    void set_root(NodeId id) { root_ = id; }
    NodeId root() const { return root_; }

    std::size_t size() const { return nodes_.size(); }
    const Node& node(NodeId id) const { return nodes_.at(id); }
    const std::vector<Node>& nodes() const { return nodes_; }

    /// Category of a node; for OR nodes the shared category of the
    /// children.
    const std::string& category_of(NodeId id) const;

    /// Terminal yield under a node. For OR nodes, the children's common
    /// yield (taken from the first child).
    std::vector<std::string> yield_of(NodeId id) const;

private:
    std::vector<Node> nodes_;
    NodeId root_ = 0;
};

struct Violation {
    NodeId node = 0;
    std::string message;
};

/// Well-formedness of a forest against its backbone: acyclicity,
/// reachability, OR-children label and yield agreement, OR arity, span
/// consistency, and that every AND node instantiates a grammar rule.
std::vector<Violation> validate(const Forest& f, const BackboneGrammar& g);

struct CycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Nodes reachable from the root, children before parents. Throws
/// CycleError on cyclic input.
std::vector<NodeId> bottom_up_order(const Forest& f);

/// Number of tree readings: product over AND children, sum over OR
/// children, one at leaves.
BigInt readings_count(const Forest& f);
BigInt readings_count(const Forest& f, NodeId from);

/// A tree reading as the map from each reachable OR node to the chosen
/// child.
struct Reading {
    std::map<NodeId, NodeId> choice;
    bool operator==(const Reading& o) const { return choice == o.choice; }
    bool operator<(const Reading& o) const { return choice < o.choice; }
};

/// All distinct readings (up to cap), each exactly once.
std::vector<Reading> enumerate_readings(const Forest& f, std::uint64_t cap);
std::vector<Reading> enumerate_readings(const Forest& f, NodeId from, std::uint64_t cap);

/// Nodes of the reading's tree below (and including) from, in
/// depth-first order.
std::vector<NodeId> reading_nodes(const Forest& f, const Reading& r, NodeId from);

/// Strict descendants of a node that occur in every reading of the
/// subforest rooted there.
std::set<NodeId> must_occur(const Forest& f, NodeId node);
std::vector<std::set<NodeId>> must_occur_table(const Forest& f);

struct NodeCounts {
    std::size_t and_nodes = 0;
    std::size_t or_nodes = 0;
    std::size_t leaf_nodes = 0;
    std::size_t and_or() const { return and_nodes + or_nodes; }
};

NodeCounts node_counts(const Forest& f);

}  // namespace packedsem

#pragma once

#include <string>

#include "packedsem/packer.hpp"

namespace packedsem {

/// Text dump of a packed result: the conjunctive core as the root
/// binding, the goal, and the environment in definition order.
///
///   SEM:
///     V0 = [[e1,...],V8,[...|V8]]
///   D:
///     N2
///   ENV:
///     N0 := (V9 = l2 & V10 = x2 | V9 = l1 & V10 = e1)
std::string dump_packed(const PackedResult& p);

/// Graphviz rendering of the core's term graph; shared subterms appear
/// once, so the effect of packing is visible in the structure.
std::string packed_sem_to_dot(const PackedResult& p);

}  // namespace packedsem

#pragma once

#include <map>

#include "cdplus/graph.hpp"

namespace cdp {

/// A value a pattern variable was bound to.
struct Bound {
  NodeId node = -1;
  NodeKind kind = NodeKind::PP;
  std::string label;
  bool operator==(const Bound&) const = default;
  auto operator<=>(const Bound&) const = default;
};

/// variable symbol ("?X") -> bound target node
using Bindings = std::map<std::string, Bound>;

/// All distinct variable bindings over injective subgraph embeddings of
/// `pattern` into `target`. Non-variable nodes must agree on kind and label;
/// pattern attributes must be a subset of the target node's; pattern link
/// modifiers must be a subset of the target link's. Results are sorted.
std::vector<Bindings> match(const ConceptGraph& pattern, const ConceptGraph& target);

/// True when at least one embedding exists (labels exact, no variables needed).
bool embeds(const ConceptGraph& pattern, const ConceptGraph& target);

/// Rewrites variable nodes using `b`: the label becomes the bound label.
/// Binding a variable to a node of a different kind throws KindMismatch.
ConceptGraph substitute(const ConceptGraph& pattern, const Bindings& b);

} // namespace cdp

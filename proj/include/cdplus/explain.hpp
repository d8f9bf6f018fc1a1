#pragma once

#include <string>

#include "cdplus/graph.hpp"

namespace cdp {

/// Deterministic English rendering of a validated graph. One sentence per
/// root; cause/enable/temporal links become connectives. Meant for --explain
/// output and golden-file tests, not for prose quality.
std::string explain(const ConceptGraph& g);

/// Renders the conceptualization headed by `head` as a finite clause.
std::string explain_clause(const ConceptGraph& g, NodeId head);

/// Deterministic Graphviz rendering: nodes in id order, one line each.
std::string to_dot(const ConceptGraph& g);

} // namespace cdp

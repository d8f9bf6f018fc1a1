#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdplus/graph.hpp"

namespace cdp {

/// One evaluable precondition of a function definition. Either a named scene
/// relation over object/part arguments, or an ordering comparison between two
/// measured parameters (e.g. hardness of one body vs. weight of another).
struct Condition {
  enum Kind { Relation, Compare };

  /// A comparison operand: a parameter of an object, or a literal.
  struct Param {
    std::string func; // "hardness", "weight", "height", ... ; empty = literal
    std::string arg;  // object id or variable; literal spelling when func==""
    bool operator==(const Param&) const = default;
  };

  Kind kind = Relation;
  std::string symbol;            // relation name (Relation) / op name (Compare)
  std::vector<std::string> args; // Relation arguments, may contain variables
  Param lhs, rhs;                // Compare operands

  bool operator==(const Condition&) const = default;
};

/// A named function/affordance: the factual enable/cause chain, its
/// counterfactual twin, the scene preconditions, and optional attachments.
struct FunctionDefinition {
  std::string name;
  ConceptGraph fact;
  ConceptGraph cfact;
  std::vector<Condition> conditions;
  std::string mes;        // name of an associated may-event script, if any
  ConceptGraph motivation; // empty graph when absent

  bool has_motivation() const { return !motivation.nodes.empty(); }
};

/// Qualitative trend of one stage variable.
enum class Trend { Down, Steady, Up, Null };

std::string trend_name(Trend t);
Trend trend_from_string(const std::string& s);

/// A stage-by-stage qualitative process chain. Edges carry cause/enable
/// flavor; at most one declared loop edge is evaluated at steady state
/// rather than propagated (so the chain stays a DAG for traversal).
struct QualChain {
  struct Stage {
    std::string name;
    std::map<std::string, Trend> vars; // Volume/Pressure/Temperature/Flow
    bool operator==(const Stage&) const = default;
  };
  struct Edge {
    std::string from, to;
    bool enable = false; // false = cause
    bool loop = false;   // declared feedback edge
    bool operator==(const Edge&) const = default;
  };

  std::string name;
  std::vector<Stage> stages;
  std::vector<Edge> edges;

  const Stage* find_stage(const std::string& n) const;
};

/// Structural checks: edge endpoints exist, non-loop edges form a DAG,
/// stage variables come from the qualitative vocabulary.
std::vector<std::string> check_chain(const QualChain& c);

} // namespace cdp

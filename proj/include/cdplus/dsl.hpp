#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cdplus/graph.hpp"
#include "cdplus/kb.hpp"
#include "cdplus/scene.hpp"
#include "cdplus/sexpr.hpp"

namespace cdp {

/// A person standing in for the human model: pelvis location, named posture,
/// which way they face, and overall scale.
struct BodyDecl {
  std::string name;
  Vec2 at{0, 0};
  std::string posture = "Standing";
  double facing = 1; // +1 faces +x, -1 faces -x
  double scale = 1;
  std::string scene; // scene this person belongs with ("" = supplied later)
};

/// One query form. Which fields matter depends on the kind.
struct Ask {
  enum Kind { Recognize, Experiment, Chair, Plan, Propagate };
  Kind kind = Recognize;
  std::string function;              // recognize
  std::string scene;                 // recognize/experiment/chair/plan
  std::string part;                  // experiment
  std::vector<std::string> assembly; // chair (empty = use tagged bodies)
  std::string body;                  // chair
  ConceptGraph goal;                 // plan
  std::vector<std::string> kb;       // plan: definitions to chain over
  std::string chain;                 // propagate
  std::vector<std::pair<std::string, std::string>> clamps; // blocked edges
};

std::string ask_kind_name(Ask::Kind k);

using Declaration =
    std::variant<ConceptGraph, Script, Scene, FunctionDefinition, BodyDecl, QualChain, Ask>;

/// An ordered collection of top-level forms from one `.cdp` file.
struct SourceDocument {
  std::string path;
  std::vector<Declaration> decls;

  const ConceptGraph* find_concept(const std::string& name) const;
  const Script* find_script(const std::string& name) const;
  const Scene* find_scene(const std::string& name) const;
  const FunctionDefinition* find_function(const std::string& name) const;
  const BodyDecl* find_body(const std::string& name) const;
  const QualChain* find_chain(const std::string& name) const;
};

/// Parses a document. Name references (elaborations, query targets) resolve
/// in a second pass, so forward references within the document are fine.
/// Throws ParseError (with position), ValidationFailure (citing the violated
/// construction rule), DegenerateShape, or UnknownSymbol.
SourceDocument parse_document(const std::string& text, const std::string& path = "");

/// Reads and parses one file.
SourceDocument parse_file(const std::string& path);

/// Parses text and returns its first scene declaration.
Scene parse_scene(const std::string& text);

/// Canonical rendering: fixed clause order, sorted attribute keys, 2-space
/// indentation, shortest number spellings. print(parse(print(d))) == print(d).
std::string print_document(const SourceDocument& d);

/// One graph as a single canonical form — structured syntax when the graph is
/// a simple conceptualization/chain tree, a flat node/link listing otherwise.
SExpr graph_to_sexpr(const ConceptGraph& g);

/// Inverse of graph_to_sexpr; also accepts hand-written structured syntax.
/// Does not validate or resolve names.
ConceptGraph graph_from_sexpr(const SExpr& form);

SExpr scene_to_sexpr(const Scene& s);
Scene scene_from_sexpr(const SExpr& form);

/// Structural equality, ignoring node ids and source formatting.
bool documents_equal(const SourceDocument& a, const SourceDocument& b);
bool scenes_equal(const Scene& a, const Scene& b);
bool scripts_equal(const Script& a, const Script& b);

} // namespace cdp

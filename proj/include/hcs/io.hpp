#pragma once

#include <string>

#include "json.hpp"

#include "hcs/gaussian.hpp"
#include "hcs/labelcover.hpp"
#include "hcs/operators.hpp"
#include "hcs/oracles.hpp"
#include "hcs/qfunc.hpp"
#include "hcs/reduction.hpp"

namespace hcs {

using Json = nlohmann::json;

// JSON codecs.  Every *_from_json validates through the owning module's
// constructors, so malformed files surface as invalid-parameter errors.
Json to_json(const QFunction& f);  // {"q", "n", "values"}
QFunction qfunction_from_json(const Json& j);

Json to_json(const MarkovOp& T);  // {"m", "matrix": [["p/q", ...], ...]}
MarkovOp markov_from_json(const Json& j);

Json to_json(const ConstraintKind& c);
ConstraintKind constraint_from_json(const Json& j, int R);

Json to_json(const LabelCoverInstance& G);  // {"vertices", "R", "edges"}
LabelCoverInstance instance_from_json(const Json& j);

Json to_json(const BipartiteLC& lc);  // adds {"X", "Y", "weights"}
BipartiteLC bipartite_from_json(const Json& j);

Json to_json(const TLabeling& L);  // {"t", "assignment"}
TLabeling tlabeling_from_json(const Json& j);

// Vertex id set, stored as {"vertices": [ids]}; a bare array also parses.
Json ids_to_json(const std::vector<long long>& ids);
std::vector<long long> ids_from_json(const Json& j);

Json to_json(const BoundReport& r);
Json to_json(const DecodeResult& r);
Json to_json(const ChromaticResult& r);
Json to_json(const MisResult& r);
Json to_json(const LabelingResult& r);

// DIMACS edge-list text ("p edge N M" + 1-based "e a b" lines).  Block
// graphs prepend a JSON comment line mapping each vertex id to its
// (block, coordinates) pair.
std::string to_dimacs(const Graph& g);
std::string to_dimacs(const BlockGraph& g);
Graph graph_from_dimacs(const std::string& text);

Json read_json_file(const std::string& path);
std::string slurp_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hcs

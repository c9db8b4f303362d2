#pragma once

#include <string>
#include <vector>

#include "multiway/causal.hpp"
#include "multiway/graph.hpp"
#include "multiway/homotopy.hpp"

#include "json.hpp"

namespace multiway {

// Extra layers rendered on top of the state graph.
struct ExportArtifacts {
    const CausalNetwork* causal = nullptr;
    const std::vector<Square>* squares = nullptr;
    const std::vector<Cube>* cubes = nullptr;
    std::vector<std::pair<std::string, nlohmann::ordered_json>> reports;
};

// GraphViz rendering. State edges: level 0 gray, level 1 purple, level 2
// orange; causal edges orange dashed. Deterministic node and edge order.
std::string to_dot(const MultiwayGraph& g, const ExportArtifacts& artifacts = {});
std::string to_dot(const CausalNetwork& net);

// Schema v1 document:
// { schema_version, substrate, states[], events[], edges[], cells{}, reports{} }
nlohmann::ordered_json to_json(const MultiwayGraph& g,
                               const ExportArtifacts& artifacts = {});

// Rebuild a graph (and cells) from a schema v1 document. Lossless for
// everything to_json emits.
struct ImportedDocument {
    MultiwayGraph graph;
    std::vector<Square> squares;
    std::vector<Cube> cubes;
    nlohmann::ordered_json reports;
};

ImportedDocument from_json(const nlohmann::ordered_json& doc);

}  // namespace multiway

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "multiway/core.hpp"
#include "multiway/graph.hpp"

namespace multiway {

// Rule tower R0..Rn grouped by level. R0 must be nonempty.
struct RuleTower {
    std::vector<std::vector<Rule>> levels;

    static RuleTower from_rules(const std::vector<Rule>& rules);
    std::vector<Rule> flatten() const;
    int height() const { return static_cast<int>(levels.size()) - 1; }
};

// Pair equal-length paths index-wise into whole-state rules at `level`:
// one rule per interior index with differing states. Endpoints must agree.
// Throws LengthMismatch / EndpointMismatch / KeyNotFound.
std::vector<Rule> synthesize_homotopy_rules(const MultiwayGraph& g,
                                            const std::vector<std::string>& path1_keys,
                                            const std::vector<std::string>& path2_keys,
                                            int level, bool anchored = true);

// Re-evolve from the graph's initial states with the tower extended by
// new_rules, to `steps`.
MultiwayGraph induce(const MultiwayGraph& g, const std::vector<Rule>& new_rules,
                     std::uint32_t steps, const EvolveOptions& opts = {});

// 2-cell: verticals a->b, c->d at level 0; horizontals a->c, b->d at level 1.
// Any slot may degenerate to an identity at equal corners (the endpoint
// triangles of a path pair), but a square keeps at least one real vertical
// and one real horizontal.
struct Square {
    std::string a, b, c, d;
    bool operator==(const Square& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

std::vector<Square> find_squares(const MultiwayGraph& g);

// 3-cell: two squares joined corner-wise by level-2 edges. Axis levels:
// 0 verticals, 1 horizontals, 2 front-to-back. Slots degenerate as for
// squares; at least one real edge per axis.
struct Cube {
    // front a,b,c,d then back a',b',c',d'
    std::array<std::string, 8> corners;
    bool operator==(const Cube& o) const { return corners == o.corners; }
};

std::vector<Cube> find_cubes(const MultiwayGraph& g);

// Pasting check.
//   dimension 1: path composition is concatenation; violations are dangling
//     state references only.
//   dimension 2: for every detected square whose bottom (top) corners both
//     continue by level-0 edges, some continuation pair must close into an
//     adjacent square (rung edge or equal corners).
//   dimension 3: every detected cube's front and back faces must be detected
//     squares.
struct ClosureReport {
    int dimension = 2;
    std::size_t cells_checked = 0;
    std::vector<std::string> violations;
    bool closed() const { return violations.empty(); }
};

ClosureReport check_composition_closure(const MultiwayGraph& g, int dimension);

}  // namespace multiway

// Sweeps the phase-estimation register width t for each graph family and
// prints the marked-probability trace, used to pick the smallest t that
// reproduces the reference success probabilities.
#include <cstdio>
#include <vector>

#include "qwalk/search.hpp"
#include "qwalk/walk.hpp"

int main() {
    using namespace qwalk;
    struct Case {
        WalkGraph graph;
        std::vector<std::string> marked;
        int iterations;
    };
    const std::vector<Case> cases = {
        {WalkGraph::hypercube(4), {"1011"}, 6},
        {WalkGraph::lattice2d(4), {"1011"}, 6},
        {WalkGraph::complete_bipartite(8), {"011"}, 6},
        {WalkGraph::complete(16), {"1011", "1111"}, 6},
    };
    for (const Case& c : cases) {
        std::printf("== %s marked={", c.graph.name().c_str());
        for (const std::string& m : c.marked) std::printf(" %s", m.c_str());
        std::printf(" }\n");
        for (int t = 1; t <= 4; ++t) {
            const std::vector<double> trace =
                marked_probability_trace(c.graph, c.marked, t, c.iterations);
            std::printf("  t=%d trace:", t);
            for (double p : trace) std::printf(" %.4f", p);
            std::printf("\n");
        }
    }
    return 0;
}

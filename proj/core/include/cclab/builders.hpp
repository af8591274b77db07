#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cclab/bipartite.hpp"
#include "cclab/matrix.hpp"
#include "cclab/relations.hpp"

namespace cclab {

// Points-versus-blocks incidence data.
struct IncidenceStructure {
    std::size_t points = 0;
    std::vector<std::vector<std::size_t>> blocks;

    // v x b incidence matrix N1. Throws StructuralError on bad indices or
    // empty blocks.
    Matrix incidence() const;
};

struct BipartiteGraph {
    std::size_t left = 0;
    std::size_t right = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    Matrix biadjacency() const;
};

enum class DesignMode {
    auto_detect,
    quasi_symmetric,
    strongly_regular,
};

// Builds the candidate two-fibre configuration of a design: X and Y
// relations are the level sets of the Gram matrices N1 N1^T and N1^T N1
// (larger Gram value first), N is {N1, J - N1} with an empty complement
// dropped. quasi_symmetric demands a 2-design with exactly two block
// intersection sizes; strongly_regular demands exactly two off-diagonal
// levels on both sides; auto accepts any level counts. Throws BuildError
// when the requested mode does not fit, reporting the observed level values.
BipartiteConfig from_design(const IncidenceStructure& design,
                            DesignMode mode = DesignMode::auto_detect);

// Distance partition of a connected bipartite graph: odd distances become
// the cross relations N_i, even distances split into X_i on the left part
// and Y_i on the right part. Empty distance classes are dropped and indices
// compacted. The result is a candidate; verify_bcc decides whether it is a
// bipartite coherent configuration.
BipartiteConfig from_bipartite_graph(const BipartiteGraph& g);

// Embeds X/Y/N and the N-transposes into the two-fibre block structure.
CoherentConfig assemble(const BipartiteConfig& bc);

// One-fibre distance partition of a connected graph given by its adjacency
// matrix: relations I, A_1, ..., A_d. Used by the classifier to rebuild a
// configuration from a designated adjacency relation.
CoherentConfig distance_configuration(const Matrix& adjacency);

} // namespace cclab

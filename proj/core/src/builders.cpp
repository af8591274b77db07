#include "cclab/builders.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "cclab/errors.hpp"

namespace cclab {

namespace {

std::string value_multiset(const std::set<long long>& values) {
    std::string s = "{";
    bool first = true;
    for (long long v : values) {
        if (!first) s += ", ";
        s += std::to_string(v);
        first = false;
    }
    return s + "}";
}

// Off-diagonal level sets of a symmetric integer Gram matrix, one 01-matrix
// per value, ordered by decreasing value.
std::vector<std::pair<long long, Matrix>> gram_levels(const Matrix& gram) {
    std::map<long long, Matrix, std::greater<>> levels;
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        for (std::size_t j = 0; j < gram.cols(); ++j) {
            if (i == j) continue;
            const long long v = std::llround(gram(i, j));
            auto [it, inserted] = levels.try_emplace(v, gram.rows(), gram.cols());
            it->second(i, j) = 1.0;
        }
    }
    return {levels.begin(), levels.end()};
}

std::set<long long> level_values(const std::vector<std::pair<long long, Matrix>>& levels) {
    std::set<long long> vals;
    for (const auto& [v, m] : levels) vals.insert(v);
    return vals;
}

// Breadth-first distances from `start` over an adjacency matrix; -1 marks
// unreachable vertices.
std::vector<int> bfs_distances(const Matrix& adjacency, std::size_t start) {
    std::vector<int> dist(adjacency.rows(), -1);
    std::queue<std::size_t> queue;
    dist[start] = 0;
    queue.push(start);
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop();
        for (std::size_t v = 0; v < adjacency.cols(); ++v) {
            if (adjacency(u, v) != 0.0 && dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    return dist;
}

} // namespace

Matrix IncidenceStructure::incidence() const {
    if (points == 0 || blocks.empty()) {
        throw StructuralError("incidence structure needs points and at least one block");
    }
    Matrix n(points, blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw StructuralError("block " + std::to_string(b) + " is empty");
        }
        for (std::size_t p : blocks[b]) {
            if (p >= points) {
                throw StructuralError("block " + std::to_string(b) + " references point " +
                                      std::to_string(p) + " outside [0," +
                                      std::to_string(points) + ")");
            }
            if (n(p, b) != 0.0) {
                throw StructuralError("block " + std::to_string(b) + " repeats point " +
                                      std::to_string(p));
            }
            n(p, b) = 1.0;
        }
    }
    return n;
}

Matrix BipartiteGraph::biadjacency() const {
    if (left == 0 || right == 0) {
        throw StructuralError("bipartite graph needs vertices on both sides");
    }
    Matrix n(left, right);
    for (const auto& [u, v] : edges) {
        if (u >= left || v >= right) {
            throw StructuralError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range");
        }
        if (n(u, v) != 0.0) {
            throw StructuralError("repeated edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
        }
        n(u, v) = 1.0;
    }
    return n;
}

BipartiteConfig from_design(const IncidenceStructure& design, DesignMode mode) {
    const Matrix n1 = design.incidence();
    const std::size_t v = n1.rows();
    const std::size_t b = n1.cols();

    const double r = n1.row_sum(0);
    for (std::size_t i = 1; i < v; ++i) {
        if (n1.row_sum(i) != r) {
            throw BuildError("replication is not constant: point 0 lies in " +
                             std::to_string(std::llround(r)) + " blocks, point " +
                             std::to_string(i) + " in " +
                             std::to_string(std::llround(n1.row_sum(i))));
        }
    }
    const double k = n1.col_sum(0);
    for (std::size_t j = 1; j < b; ++j) {
        if (n1.col_sum(j) != k) {
            throw BuildError("block size is not constant: block 0 has " +
                             std::to_string(std::llround(k)) + " points, block " +
                             std::to_string(j) + " has " +
                             std::to_string(std::llround(n1.col_sum(j))));
        }
    }

    const Matrix point_gram = n1 * n1.transpose();
    const Matrix block_gram = n1.transpose() * n1;
    auto x_levels = gram_levels(point_gram);
    auto y_levels = gram_levels(block_gram);

    if (mode == DesignMode::quasi_symmetric) {
        if (y_levels.size() != 2 || x_levels.size() != 1) {
            throw BuildError("not quasi-symmetric: point Gram levels " +
                             value_multiset(level_values(x_levels)) +
                             ", block intersection sizes " +
                             value_multiset(level_values(y_levels)));
        }
    } else if (mode == DesignMode::strongly_regular) {
        if (x_levels.size() != 2 || y_levels.size() != 2) {
            throw BuildError("not a strongly regular design: point Gram levels " +
                             value_multiset(level_values(x_levels)) + ", block Gram levels " +
                             value_multiset(level_values(y_levels)));
        }
    }

    BipartiteConfig bc;
    bc.beta_size = v;
    bc.gamma_size = b;
    bc.X.push_back(Matrix::identity(v));
    for (auto& [value, level] : x_levels) bc.X.push_back(std::move(level));
    bc.Y.push_back(Matrix::identity(b));
    for (auto& [value, level] : y_levels) bc.Y.push_back(std::move(level));
    bc.N.push_back(n1);
    const Matrix n2 = Matrix::ones(v, b) - n1;
    if (!n2.is_zero(0.0)) bc.N.push_back(n2);
    return bc;
}

BipartiteConfig from_bipartite_graph(const BipartiteGraph& g) {
    const Matrix n1 = g.biadjacency();
    const std::size_t p = g.left;
    const std::size_t q = g.right;
    const std::size_t total = p + q;

    Matrix adjacency(total, total);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            adjacency(i, p + j) = n1(i, j);
            adjacency(p + j, i) = n1(i, j);
        }
    }

    // All-pairs distances; connectivity is checked from vertex 0.
    std::vector<std::vector<int>> dist(total);
    for (std::size_t u = 0; u < total; ++u) {
        dist[u] = bfs_distances(adjacency, u);
        if (u == 0) {
            for (std::size_t w = 0; w < total; ++w) {
                if (dist[0][w] < 0) {
                    const std::string a = "left 0";
                    const std::string brep = (w < p) ? "left " + std::to_string(w)
                                                     : "right " + std::to_string(w - p);
                    throw BuildError("graph is disconnected: no path between " + a + " and " +
                                     brep);
                }
            }
        }
    }

    int diameter = 0;
    for (std::size_t u = 0; u < total; ++u)
        for (std::size_t w = 0; w < total; ++w) diameter = std::max(diameter, dist[u][w]);

    BipartiteConfig bc;
    bc.beta_size = p;
    bc.gamma_size = q;
    for (int d = 0; d <= diameter; d += 2) {
        Matrix x(p, p), y(q, q);
        bool x_nonzero = false, y_nonzero = false;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j)
                if (dist[i][j] == d) {
                    x(i, j) = 1.0;
                    x_nonzero = true;
                }
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j)
                if (dist[p + i][p + j] == d) {
                    y(i, j) = 1.0;
                    y_nonzero = true;
                }
        if (x_nonzero) bc.X.push_back(std::move(x));
        if (y_nonzero) bc.Y.push_back(std::move(y));
    }
    for (int d = 1; d <= diameter; d += 2) {
        Matrix n(p, q);
        bool nonzero = false;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < q; ++j)
                if (dist[i][p + j] == d) {
                    n(i, j) = 1.0;
                    nonzero = true;
                }
        if (nonzero) bc.N.push_back(std::move(n));
    }
    return bc;
}

CoherentConfig assemble(const BipartiteConfig& bc) {
    bc.validate_shapes();
    std::vector<Relation> relations;
    for (std::size_t i = 0; i < bc.X.size(); ++i) relations.push_back({0, 0, i, bc.X[i]});
    for (std::size_t i = 0; i < bc.Y.size(); ++i) relations.push_back({1, 1, i, bc.Y[i]});
    for (std::size_t h = 0; h < bc.N.size(); ++h) {
        relations.push_back({0, 1, h + 1, bc.N[h]});
        relations.push_back({1, 0, h + 1, bc.N[h].transpose()});
    }
    return CoherentConfig(FibrePartition::from_sizes({bc.beta_size, bc.gamma_size}),
                          std::move(relations));
}

CoherentConfig distance_configuration(const Matrix& adjacency) {
    if (!adjacency.is_square() || !adjacency.is_binary()) {
        throw StructuralError("distance_configuration expects a square 01 adjacency matrix");
    }
    if (!adjacency.is_symmetric(0.0)) {
        throw StructuralError("distance_configuration expects a symmetric adjacency matrix");
    }
    const std::size_t n = adjacency.rows();
    std::vector<std::vector<int>> dist(n);
    for (std::size_t u = 0; u < n; ++u) {
        dist[u] = bfs_distances(adjacency, u);
        for (std::size_t w = 0; w < n; ++w) {
            if (dist[u][w] < 0) {
                throw BuildError("graph is disconnected: no path between " + std::to_string(u) +
                                 " and " + std::to_string(w));
            }
        }
    }
    int diameter = 0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t w = 0; w < n; ++w) diameter = std::max(diameter, dist[u][w]);

    std::vector<Relation> relations;
    for (int d = 0; d <= diameter; ++d) {
        Matrix a(n, n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t w = 0; w < n; ++w)
                if (dist[u][w] == d) a(u, w) = 1.0;
        relations.push_back({0, 0, static_cast<std::size_t>(d), std::move(a)});
    }
    return CoherentConfig(FibrePartition::from_sizes({n}), std::move(relations));
}

} // namespace cclab

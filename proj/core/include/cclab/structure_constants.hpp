#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cclab/bipartite.hpp"
#include "cclab/parameters.hpp"
#include "cclab/spectral.hpp"
#include "cclab/tolerance.hpp"

namespace cclab {

// Intersection numbers over the interleaved ordering that compresses the
// eight product families into two tables: on the beta side, even index 2i
// stands for X_i and odd index 2j-1 for N_j; on the gamma side, even is Y_i
// and odd is N_j^T. xi(a,b,h) is the coefficient of the h-th interleaved
// relation in the product of the a-th and b-th; undefined slots hold NaN.
struct IntersectionTable {
    std::size_t xi_size = 0;
    std::size_t sigma_size = 0;
    std::vector<double> xi;
    std::vector<double> sigma;
    double max_round_residual = 0.0;
    std::vector<std::string> defects;

    double xi_at(std::size_t a, std::size_t b, std::size_t h) const {
        return xi[(a * xi_size + b) * xi_size + h];
    }
    double sigma_at(std::size_t a, std::size_t b, std::size_t h) const {
        return sigma[(a * sigma_size + b) * sigma_size + h];
    }
    bool xi_defined(std::size_t a, std::size_t b, std::size_t h) const;
    bool sigma_defined(std::size_t a, std::size_t b, std::size_t h) const;
};

// Evaluates the four xi families and the four sigma families through the
// eigenvalue sums, rounding to the nearest integer when within int_tol and
// recording the pre-rounding residual. Values farther from an integer are
// kept raw and reported in `defects`.
IntersectionTable intersection_numbers(const BipartiteConfig& bc, const EigenSystem& es,
                                       const Tolerance& tol = {}, double int_tol = 1e-6);

// The same tables read off exact integer matrix products: the coefficient
// of each product on every relation support, which must be constant there.
// Non-constant coefficients are reported in `defects` with the two
// conflicting coordinates.
IntersectionTable intersection_oracle(const BipartiteConfig& bc);

// Krein parameters: lambda over the beta idempotents, delta over the D
// blocks, rho over the gamma idempotents. Each is evaluated through the
// dual eigenvalue sums and cross-checked against the direct Schur
// projection; delta is additionally recomputed from the gamma side.
struct KreinTable {
    std::size_t n_beta = 0;
    std::size_t n_cross = 0;
    std::size_t n_gamma = 0;
    std::vector<double> lambda;
    std::vector<double> delta;
    std::vector<double> rho;
    double cross_check_residual = 0.0;
    double side_symmetry_residual = 0.0;

    double lambda_at(std::size_t i, std::size_t j, std::size_t h) const {
        return lambda[(i * n_beta + j) * n_beta + h];
    }
    double delta_at(std::size_t i, std::size_t j, std::size_t h) const {
        return delta[(i * n_cross + j) * n_cross + h];
    }
    double rho_at(std::size_t i, std::size_t j, std::size_t h) const {
        return rho[(i * n_gamma + j) * n_gamma + h];
    }
};

KreinTable krein_parameters(const SpectralBasis& sb, const EigenSystem& es,
                            std::size_t beta_size, std::size_t gamma_size,
                            const Tolerance& tol = {});

// Feasibility of the Krein table: lambda >= 0, rho >= 0, and the 2x2
// principal minor lambda*rho - delta^2 >= 0 over the paired indices, each
// within -tol.eps. One verdict per triple with its margin.
struct KreinVerdict {
    std::string family;
    std::size_t i = 0, j = 0, h = 0;
    double margin = 0.0;
    bool pass = true;
};

std::vector<KreinVerdict> krein_feasibility(const KreinTable& kt, const Tolerance& tol = {});

} // namespace cclab

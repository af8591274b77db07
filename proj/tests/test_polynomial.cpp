#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "cclab/builders.hpp"
#include "cclab/errors.hpp"
#include "cclab/polynomial.hpp"

#include "corpus.hpp"

using namespace cclab;

namespace {

struct TwoFibre {
    BipartiteConfig bc;
    SpectralBasis sb;
    EigenSystem es;
    CoherentConfig cc;
};

TwoFibre load(const BipartiteConfig& bc) {
    TwoFibre out{bc, build_spectral_basis(bc), {}, assemble(bc)};
    out.es = eigenmatrices(out.bc, out.sb);
    return out;
}

void check_soundness(const PPolyCertificate& cert, const RowSystem& row) {
    for (std::size_t h = 0; h < cert.ordering.size(); ++h) {
        // Locate the eigencolumn of the h-th ordered relation.
        for (std::size_t k = 0; k < row.relations.size(); ++k) {
            if (!(row.relations[k] == cert.ordering[h])) continue;
            REQUIRE(cert.nu[h].size() == h + 1);
            for (std::size_t r = 0; r < cert.theta.size(); ++r) {
                CHECK(poly_eval(cert.nu[h], cert.theta[r]) ==
                      doctest::Approx(row.eigencolumns[k][r]).epsilon(1e-8).scale(1.0));
            }
        }
    }
}

} // namespace

TEST_CASE("K23 beta row: ordering (I, N1, X1) with nu2 = x^2/3 - 1") {
    auto ctx = load(from_bipartite_graph(corpus::k23_graph()));
    auto row = row_system(ctx.bc, ctx.es, 0);
    auto outcome = detect_p_polynomial(row);
    REQUIRE(outcome.success());
    const auto& cert = *outcome.certificate;

    REQUIRE(cert.ordering.size() == 3);
    CHECK(cert.ordering[0] == RelationRef{0, 0, 0});
    CHECK(cert.ordering[1] == RelationRef{0, 1, 1});
    CHECK(cert.ordering[2] == RelationRef{0, 0, 1});

    CHECK(cert.theta[0] == doctest::Approx(std::sqrt(6.0)));
    CHECK(cert.theta[1] == doctest::Approx(0.0));

    REQUIRE(cert.nu[2].size() == 3);
    CHECK(cert.nu[2][0] == doctest::Approx(-1.0));
    CHECK(cert.nu[2][1] == doctest::Approx(0.0));
    CHECK(cert.nu[2][2] == doctest::Approx(1.0 / 3.0));
    CHECK(poly_eval(cert.nu[2], std::sqrt(6.0)) == doctest::Approx(1.0));
    CHECK(poly_eval(cert.nu[2], 0.0) == doctest::Approx(-1.0));
    check_soundness(cert, row);
}

TEST_CASE("Fano beta row: ordering (I, N1, X1, N2) with theta (3, sqrt 2)") {
    auto ctx = load(from_design(corpus::fano_design()));
    auto row = row_system(ctx.bc, ctx.es, 0);
    auto outcome = detect_p_polynomial(row);
    REQUIRE(outcome.success());
    const auto& cert = *outcome.certificate;

    REQUIRE(cert.ordering.size() == 4);
    CHECK(cert.ordering[1] == RelationRef{0, 1, 1});
    CHECK(cert.ordering[2] == RelationRef{0, 0, 1});
    CHECK(cert.ordering[3] == RelationRef{0, 1, 2});
    CHECK(cert.theta[0] == doctest::Approx(3.0));
    CHECK(cert.theta[1] == doctest::Approx(std::sqrt(2.0)));

    // nu2 matches (6, -1) and nu3 matches (4, -sqrt 2).
    CHECK(poly_eval(cert.nu[2], 3.0) == doctest::Approx(6.0));
    CHECK(poly_eval(cert.nu[2], std::sqrt(2.0)) == doctest::Approx(-1.0));
    CHECK(poly_eval(cert.nu[3], 3.0) == doctest::Approx(4.0));
    CHECK(poly_eval(cert.nu[3], std::sqrt(2.0)) == doctest::Approx(-std::sqrt(2.0)));
    check_soundness(cert, row);
}

TEST_CASE("pentagon is P-polynomial with the distance ordering") {
    auto cc = corpus::c5_config();
    auto ss = scheme_system(cc);
    auto row = row_system(cc, ss);
    auto outcome = detect_p_polynomial(row);
    REQUIRE(outcome.success());
    const auto& cert = *outcome.certificate;
    REQUIRE(cert.ordering.size() == 3);
    CHECK(cert.ordering[1] == RelationRef{0, 0, 1});
    CHECK(cert.ordering[2] == RelationRef{0, 0, 2});
    // A2 = A^2 - 2I in the pentagon.
    CHECK(cert.nu[2][0] == doctest::Approx(-2.0));
    CHECK(cert.nu[2][1] == doctest::Approx(0.0).scale(1.0));
    CHECK(cert.nu[2][2] == doctest::Approx(1.0));
    CHECK(classify(cc, cert) == GraphClass::distance_regular);
}

TEST_CASE("Petersen classifies distance_regular with rebuild agreement") {
    auto cc = corpus::petersen_config();
    auto ss = scheme_system(cc);
    auto outcome = detect_p_polynomial(row_system(cc, ss));
    REQUIRE(outcome.success());
    CHECK(classify(cc, *outcome.certificate) == GraphClass::distance_regular);
}

TEST_CASE("two-fibre corpus classifies distance_biregular") {
    for (const auto& named : corpus::bcc_corpus()) {
        CAPTURE(named.name);
        auto ctx = load(named.bc);
        auto outcome = detect_p_polynomial(row_system(ctx.bc, ctx.es, 0));
        REQUIRE_MESSAGE(outcome.success(), named.name);
        CHECK(classify(ctx.cc, *outcome.certificate) == GraphClass::distance_biregular);

        // The gamma row admits a certificate as well.
        auto gamma = detect_p_polynomial(row_system(ctx.bc, ctx.es, 1));
        REQUIRE_MESSAGE(gamma.success(), named.name);
        CHECK(classify(ctx.cc, *gamma.certificate) == GraphClass::distance_biregular);
    }
}

TEST_CASE("parity of the nu polynomials in two-fibre certificates") {
    for (const auto& named : corpus::bcc_corpus()) {
        CAPTURE(named.name);
        auto ctx = load(named.bc);
        for (std::size_t fibre = 0; fibre < 2; ++fibre) {
            auto outcome = detect_p_polynomial(row_system(ctx.bc, ctx.es, fibre));
            REQUIRE(outcome.success());
            const auto& cert = *outcome.certificate;
            for (std::size_t h = 0; h < cert.nu.size(); ++h) {
                for (std::size_t k = 0; k < cert.nu[h].size(); ++k) {
                    if (k % 2 != h % 2) CHECK(std::abs(cert.nu[h][k]) <= 1e-9);
                }
            }
        }
    }
}

TEST_CASE("within-fibre candidates are refuted on two-fibre configurations") {
    auto ctx = load(from_design(corpus::fano_design()));
    auto outcome = detect_p_polynomial(row_system(ctx.bc, ctx.es, 0));
    REQUIRE(outcome.success());
    // X1 was tried first (block order) and had to fail.
    REQUIRE(!outcome.refutations.empty());
    CHECK(outcome.refutations[0].candidate == RelationRef{0, 0, 1});
}

TEST_CASE("classify rejects a corrupted certificate") {
    auto ctx = load(from_bipartite_graph(corpus::k23_graph()));
    auto outcome = detect_p_polynomial(row_system(ctx.bc, ctx.es, 0));
    REQUIRE(outcome.success());
    auto cert = *outcome.certificate;
    std::swap(cert.ordering[1], cert.ordering[2]);
    CHECK_THROWS_AS(classify(ctx.cc, cert), std::logic_error);
}

TEST_CASE("dbrg sequences of K23") {
    auto outcome = dbrg_sequences(corpus::k23_graph());
    REQUIRE(outcome.success());
    const auto& seq = *outcome.sequences;
    REQUIRE(seq.p_beta.size() == 2);
    // P1(x) = (x - 3)/3 sends N N^T = 3 J_2 to J - I.
    CHECK(seq.p_beta[1][0] == doctest::Approx(-1.0));
    CHECK(seq.p_beta[1][1] == doctest::Approx(1.0 / 3.0));
    REQUIRE(seq.i_beta.size() == 1);
    CHECK(seq.i_beta[0][0] == doctest::Approx(1.0));
}

TEST_CASE("dbrg sequences of the Heawood graph") {
    auto outcome = dbrg_sequences(corpus::heawood_graph());
    REQUIRE(outcome.success());
    const auto& seq = *outcome.sequences;
    REQUIRE(seq.p_beta.size() == 2);
    REQUIRE(seq.i_beta.size() == 2);
    // Solved exactly on the spectrum {9, 2} of N N^T = 2I + J:
    // I_1(x) = (x - 5)/3 sends N1 to N2.
    CHECK(seq.i_beta[1][0] == doctest::Approx(-5.0 / 3.0));
    CHECK(seq.i_beta[1][1] == doctest::Approx(1.0 / 3.0));
    // Degrees are (0,1) on both sides.
    CHECK(seq.p_gamma.size() == 2);
    CHECK(seq.i_gamma.size() == 2);
}

TEST_CASE("dbrg sequences of the star K13") {
    auto outcome = dbrg_sequences(corpus::k13_graph());
    REQUIRE(outcome.success());
    CHECK(outcome.sequences->p_beta.size() == 1);
    CHECK(outcome.sequences->p_gamma.size() == 2);
}

TEST_CASE("a non-semiregular tree is refuted") {
    // Path on four vertices: left degrees 1 and 2.
    BipartiteGraph p4{2, 2, {{0, 0}, {1, 0}, {1, 1}}};
    auto outcome = dbrg_sequences(p4);
    CHECK(!outcome.success());
    CHECK(!outcome.failure.empty());
}

TEST_CASE("dbrg success coincides with P-polynomial detection") {
    for (const auto& named : corpus::bcc_corpus()) {
        CAPTURE(named.name);
        // Rebuild the graph of N1 and compare both routes.
        const Matrix& n1 = named.bc.N[0];
        BipartiteGraph g{n1.rows(), n1.cols(), {}};
        for (std::size_t i = 0; i < n1.rows(); ++i)
            for (std::size_t j = 0; j < n1.cols(); ++j)
                if (n1(i, j) == 1.0) g.edges.push_back({i, j});
        auto ctx = load(named.bc);
        const bool p_ok = detect_p_polynomial(row_system(ctx.bc, ctx.es, 0)).success();
        const bool dbrg_ok = dbrg_sequences(g).success();
        CHECK(p_ok == dbrg_ok);
    }
}

TEST_CASE("the 3-subset block scheme is distance-regular of diameter 3") {
    // One-fibre scheme on the twenty 3-subsets of a 6-set, classes by
    // intersection size 2, 1, 0 (distance 1, 2, 3).
    auto bc = from_design(corpus::triples_design());
    std::vector<Relation> rels;
    for (std::size_t i = 0; i < bc.Y.size(); ++i) rels.push_back({0, 0, i, bc.Y[i]});
    CoherentConfig cc(FibrePartition::from_sizes({20}), std::move(rels));
    REQUIRE(verify_axioms(cc).pass());

    auto ss = scheme_system(cc);
    REQUIRE(ss.idempotents.size() == 4);
    CHECK(ss.multiplicities[0] == doctest::Approx(1.0));
    CHECK(ss.multiplicities[1] == doctest::Approx(5.0));
    CHECK(ss.multiplicities[2] == doctest::Approx(9.0));
    CHECK(ss.multiplicities[3] == doctest::Approx(5.0));
    CHECK(ss.valencies == std::vector<double>{1.0, 9.0, 9.0, 1.0});

    auto outcome = detect_p_polynomial(row_system(cc, ss));
    REQUIRE(outcome.success());
    CHECK(outcome.certificate->ordering[1] == RelationRef{0, 0, 1});
    CHECK(outcome.certificate->ordering[2] == RelationRef{0, 0, 2});
    CHECK(outcome.certificate->ordering[3] == RelationRef{0, 0, 3});
    CHECK(classify(cc, *outcome.certificate) == GraphClass::distance_regular);
}

TEST_CASE("the Klein matching scheme is refuted on every candidate") {
    // Three perfect matchings of K4: every product of two classes is a
    // third, so no candidate chain can grow and nothing is P-polynomial.
    Matrix a1(4, 4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    Matrix a2(4, 4, {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0});
    Matrix a3(4, 4, {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0});
    std::vector<Relation> rels;
    rels.push_back({0, 0, 0, Matrix::identity(4)});
    rels.push_back({0, 0, 1, a1});
    rels.push_back({0, 0, 2, a2});
    rels.push_back({0, 0, 3, a3});
    CoherentConfig cc(FibrePartition::from_sizes({4}), std::move(rels));
    REQUIRE(verify_axioms(cc).pass());

    auto ss = scheme_system(cc);
    auto outcome = detect_p_polynomial(row_system(cc, ss));
    CHECK(!outcome.success());
    CHECK(outcome.refutations.size() == 3);
    // Every class has eigenvalue column (1, 1, -1, -1) up to order, so the
    // candidates die on duplicate interpolation nodes.
    for (const auto& r : outcome.refutations) {
        CHECK(r.step == 1);
        CHECK(r.reason.find("duplicate") != std::string::npos);
    }
}

TEST_CASE("q-polynomial detection") {
    auto ctx = load(from_bipartite_graph(corpus::k23_graph()));

    SUBCASE("single idempotent block is trivially certified") {
        auto outcome = detect_q_polynomial(ctx.es.Q_bg);
        REQUIRE(outcome.success());
        CHECK(outcome.certificate->ordering == std::vector<std::size_t>{0});
    }

    SUBCASE("two idempotents certify when base values are distinct") {
        auto outcome = detect_q_polynomial(ctx.es.Q_beta);
        REQUIRE(outcome.success());
        REQUIRE(outcome.certificate->nubar.size() == 2);
        CHECK(outcome.certificate->nubar[1] == std::vector<double>{0.0, 1.0});
    }

    SUBCASE("three-idempotent search evaluates soundly") {
        auto pair_ctx = load(from_design(corpus::pair_design()));
        auto outcome = detect_q_polynomial(pair_ctx.es.Q_gamma);
        if (outcome.success()) {
            const auto& cert = *outcome.certificate;
            const Matrix& q = pair_ctx.es.Q_gamma;
            for (std::size_t h = 0; h < cert.ordering.size(); ++h)
                for (std::size_t r = 0; r < q.rows(); ++r)
                    CHECK(poly_eval(cert.nubar[h], q(r, cert.ordering[1])) ==
                          doctest::Approx(q(r, cert.ordering[h])).epsilon(1e-8).scale(1.0));
        } else {
            CHECK(!outcome.refutations.empty());
        }
    }

    SUBCASE("oversized blocks raise an explicit error") {
        CHECK_THROWS_AS(detect_q_polynomial(Matrix(10, 10)), UnsupportedError);
    }
}

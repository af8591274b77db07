#include "doctest.h"

#include "cclab/builders.hpp"
#include "cclab/errors.hpp"

#include "corpus.hpp"

using namespace cclab;

TEST_CASE("pair design builds as quasi-symmetric with intersections {0,1}") {
    auto bc = from_design(corpus::pair_design(), DesignMode::quasi_symmetric);
    CHECK(bc.beta_size == 4);
    CHECK(bc.gamma_size == 6);
    REQUIRE(bc.X.size() == 2);
    REQUIRE(bc.Y.size() == 3);
    REQUIRE(bc.N.size() == 2);
    CHECK(bc.X[1] == Matrix::ones(4, 4) - Matrix::identity(4));
    // Y1 carries the larger intersection size (1), Y2 the smaller (0).
    const Matrix block_gram = bc.N[0].transpose() * bc.N[0];
    CHECK(block_gram.max_abs_diff(2.0 * Matrix::identity(6) + 1.0 * bc.Y[1] + 0.0 * bc.Y[2]) ==
          0.0);
    CHECK(type_of(assemble(bc)).symbol() == "(2 2; 3)");
}

TEST_CASE("rook incidence builds as a strongly regular design") {
    auto bc = from_design(corpus::rook_design(), DesignMode::strongly_regular);
    REQUIRE(bc.X.size() == 3);
    REQUIRE(bc.Y.size() == 3);
    // N1 N1^T = 2I + 1*X1 + 0*X2.
    const Matrix gram = bc.N[0] * bc.N[0].transpose();
    CHECK(gram == 2.0 * Matrix::identity(9) + bc.X[1]);
    CHECK(type_of(assemble(bc)).symbol() == "(3 2; 3)");
}

TEST_CASE("Fano rejects quasi-symmetric mode but builds in auto mode") {
    CHECK_THROWS_WITH_AS(from_design(corpus::fano_design(), DesignMode::quasi_symmetric),
                         doctest::Contains("{1}"), BuildError);
    auto bc = from_design(corpus::fano_design());
    CHECK(type_of(assemble(bc)).symbol() == "(2 2; 2)");
}

TEST_CASE("non-constant designs are rejected") {
    IncidenceStructure lopsided{3, {{0, 1}, {0, 1, 2}}};
    CHECK_THROWS_AS(from_design(lopsided), BuildError);
}

TEST_CASE("distance partition of K23") {
    auto bc = from_bipartite_graph(corpus::k23_graph());
    REQUIRE(bc.X.size() == 2);
    REQUIRE(bc.Y.size() == 2);
    REQUIRE(bc.N.size() == 1);
    CHECK(bc.X[1] == Matrix::ones(2, 2) - Matrix::identity(2));
    CHECK(bc.Y[1] == Matrix::ones(3, 3) - Matrix::identity(3));
    CHECK(bc.N[0] == Matrix::ones(2, 3));
    CHECK(assemble(bc).relations().size() == 6);
}

TEST_CASE("distance partition of the Heawood graph") {
    auto bc = from_bipartite_graph(corpus::heawood_graph());
    REQUIRE(bc.N.size() == 2);
    CHECK(bc.N[0] == corpus::fano_incidence());
    CHECK(bc.N[1] == Matrix::ones(7, 7) - corpus::fano_incidence());
    CHECK(bc.X[1] == Matrix::ones(7, 7) - Matrix::identity(7));
    CHECK(assemble(bc).relations().size() == 8);
}

TEST_CASE("distance partition of the path P3") {
    auto bc = from_bipartite_graph(corpus::p3_graph());
    REQUIRE(bc.X.size() == 2);
    REQUIRE(bc.Y.size() == 1);
    REQUIRE(bc.N.size() == 1);
    CHECK(bc.N[0] == Matrix::ones(2, 1));
    CHECK(verify_bcc(bc).pass());
}

TEST_CASE("distance partitions satisfy C1-C3 even when C5 fails") {
    // Path on four vertices is connected bipartite but not semiregular, so
    // the candidate cannot be a bipartite coherent configuration; the
    // partition conditions still hold by construction.
    BipartiteGraph p4{2, 2, {{0, 0}, {1, 0}, {1, 1}}};
    auto bc = from_bipartite_graph(p4);
    auto report = verify_bcc(bc);
    CHECK(!report.pass());
    for (const char* ok : {"C1", "C2", "C3"}) {
        const CheckResult* c = report.find(ok);
        REQUIRE(c != nullptr);
        CHECK_MESSAGE(c->pass, ok);
    }
    const CheckResult* c5 = report.find("C5");
    REQUIRE(c5 != nullptr);
    CHECK(!c5->pass);
}

TEST_CASE("disconnected graphs are rejected with representatives") {
    BipartiteGraph g{2, 2, {{0, 0}}};
    CHECK_THROWS_WITH_AS(from_bipartite_graph(g), doctest::Contains("disconnected"), BuildError);
}

TEST_CASE("distance relations of the assembled graph partition J") {
    for (const auto& named : corpus::bcc_corpus()) {
        CAPTURE(named.name);
        const auto cc = assemble(named.bc);
        Matrix total(cc.fibres().ground_size(), cc.fibres().ground_size());
        for (const Relation& rel : cc.relations()) {
            const std::size_t ro = cc.fibres().offsets[rel.source];
            const std::size_t co = cc.fibres().offsets[rel.target];
            for (std::size_t i = 0; i < rel.matrix.rows(); ++i)
                for (std::size_t j = 0; j < rel.matrix.cols(); ++j)
                    total(ro + i, co + j) += rel.matrix(i, j);
        }
        CHECK(total == Matrix::ones(total.rows(), total.cols()));
    }
}

TEST_CASE("one-fibre distance configurations") {
    auto c5 = corpus::c5_config();
    CHECK(c5.relations().size() == 3);
    CHECK(verify_axioms(c5).pass());
    CHECK(type_of(c5).symbol() == "(3)");

    auto petersen = corpus::petersen_config();
    CHECK(petersen.relations().size() == 3);
    CHECK(verify_axioms(petersen).pass());
}

// The generalized quadrangle of order (2,2) is the largest instance in the
// suite: type (3 2; 3), diameter-4 incidence graph, and kernel idempotents
// on both sides at once.

#include <cmath>

#include "doctest.h"

#include "cclab/builders.hpp"
#include "cclab/polynomial.hpp"
#include "cclab/structure_constants.hpp"

#include "corpus.hpp"

using namespace cclab;

TEST_CASE("GQ(2,2) builds as a strongly regular design and verifies") {
    auto design = corpus::gq22_design();
    REQUIRE(design.blocks.size() == 15);

    auto bc = from_design(design, DesignMode::strongly_regular);
    CHECK(bc.beta_size == 15);
    CHECK(bc.gamma_size == 15);
    REQUIRE(bc.X.size() == 3);
    REQUIRE(bc.Y.size() == 3);
    REQUIRE(bc.N.size() == 2);
    CHECK(type_of(assemble(bc)).symbol() == "(3 2; 3)");

    // N1 N1^T = 3I + X1: collinear point pairs share exactly one line.
    CHECK((bc.N[0] * bc.N[0].transpose()) == 3.0 * Matrix::identity(15) + bc.X[1]);
    CHECK(verify_bcc(bc).pass());
}

TEST_CASE("GQ(2,2) spectral basis has kernels on both sides") {
    auto bc = from_design(corpus::gq22_design());
    auto sb = build_spectral_basis(bc);
    REQUIRE(sb.L.size() == 3);
    REQUIRE(sb.R.size() == 3);
    REQUIRE(sb.D.size() == 2);

    auto es = eigenmatrices(bc, sb);
    // Gram spectrum {9, 4, 0}: multiplicities 1, 9 and a 5-dimensional
    // kernel on each side.
    CHECK(es.m_beta[0] == doctest::Approx(1.0));
    CHECK(es.m_beta[1] == doctest::Approx(9.0));
    CHECK(es.m_beta[2] == doctest::Approx(5.0));
    CHECK(es.m_gamma[2] == doctest::Approx(5.0));
    CHECK(sb.l_labels[0] == doctest::Approx(9.0));
    CHECK(sb.l_labels[1] == doctest::Approx(4.0));
    CHECK(sb.l_labels[2] == doctest::Approx(0.0).scale(1.0));
    CHECK(es.P_bg(0, 0) == doctest::Approx(3.0));
    CHECK(es.P_bg(1, 0) == doctest::Approx(2.0));

    CHECK(verify_suda_conditions(sb, bc).pass());
    auto pq = check_pq_identity(es, 15, 15);
    CHECK(pq.max() <= 1e-9);
}

TEST_CASE("GQ(2,2) certificate runs the full depth-4 chain") {
    auto bc = from_design(corpus::gq22_design());
    auto sb = build_spectral_basis(bc);
    auto es = eigenmatrices(bc, sb);
    auto outcome = detect_p_polynomial(row_system(bc, es, 0));
    REQUIRE(outcome.success());
    const auto& cert = *outcome.certificate;
    REQUIRE(cert.ordering.size() == 5);
    CHECK(cert.ordering[1] == RelationRef{0, 1, 1});
    CHECK(cert.ordering[2] == RelationRef{0, 0, 1});
    CHECK(cert.ordering[3] == RelationRef{0, 1, 2});
    CHECK(cert.ordering[4] == RelationRef{0, 0, 2});
    CHECK(cert.theta[0] == doctest::Approx(3.0));
    CHECK(cert.theta[1] == doctest::Approx(2.0));
    CHECK(cert.theta[2] == doctest::Approx(0.0).scale(1.0));
    // nu4 is even of exact degree 4.
    REQUIRE(cert.nu[4].size() == 5);
    CHECK(cert.nu[4][4] != doctest::Approx(0.0).scale(1.0));
    CHECK(cert.nu[4][1] == doctest::Approx(0.0).scale(1.0));
    CHECK(cert.nu[4][3] == doctest::Approx(0.0).scale(1.0));
    CHECK(classify(assemble(bc), cert) == GraphClass::distance_biregular);
}

TEST_CASE("GQ(2,2) structure constants agree along both routes") {
    auto bc = from_design(corpus::gq22_design());
    auto sb = build_spectral_basis(bc);
    auto es = eigenmatrices(bc, sb);
    auto formula = intersection_numbers(bc, es);
    auto oracle = intersection_oracle(bc);
    CHECK(formula.defects.empty());
    CHECK(formula.max_round_residual <= 1e-9);
    for (std::size_t k = 0; k < formula.xi.size(); ++k) {
        if (!std::isnan(formula.xi[k])) CHECK(formula.xi[k] == oracle.xi[k]);
    }
    auto kt = krein_parameters(sb, es, 15, 15);
    CHECK(kt.cross_check_residual <= 1e-9);
    CHECK(kt.side_symmetry_residual <= 1e-9);
    for (const auto& verdict : krein_feasibility(kt)) CHECK(verdict.pass);
}

#include "doctest.h"

#include "cclab/errors.hpp"
#include "cclab/exact.hpp"
#include "cclab/matrix.hpp"

using namespace cclab;

TEST_CASE("matrix basics") {
    Matrix a(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 3);
    CHECK(a(1, 2) == 6.0);
    CHECK(a.transpose()(2, 1) == 6.0);
    CHECK(a.sum() == 21.0);
    CHECK(a.row_sum(0) == 6.0);
    CHECK(a.col_sum(1) == 7.0);

    Matrix i3 = Matrix::identity(3);
    CHECK(i3.trace() == 3.0);
    CHECK((a * i3) == a);

    CHECK_THROWS_AS(Matrix(0, 1), StructuralError);
    CHECK_THROWS_AS(Matrix(2, 2, {1.0}), StructuralError);
    CHECK_THROWS_AS(a * a, StructuralError);
}

TEST_CASE("matrix products and schur") {
    Matrix j = Matrix::ones(2, 2);
    Matrix ji = j - Matrix::identity(2);
    CHECK((j * j) == 2.0 * j);
    CHECK(j.schur(ji) == ji);
    CHECK(ji.is_symmetric(0.0));
    CHECK(ji.is_binary());
    CHECK(!(0.5 * j).is_binary());
    CHECK((0.5 * j).is_integral() == false);
}

TEST_CASE("exact span over the integers") {
    ExactSpan span;
    CHECK(span.dimension() == 0);
    CHECK(span.add({1, 0, 2}));
    CHECK(span.add({0, 1, 1}));
    CHECK(!span.add({2, 3, 7}));
    CHECK(span.dimension() == 2);
    CHECK(span.contains({3, -1, 5}));
    CHECK(!span.contains({0, 0, 1}));

    // A dependence that floating elimination at a loose threshold could
    // misjudge: rows differing in a single unit entry among large values.
    ExactSpan tight;
    CHECK(tight.add({1000000000, 1, 0}));
    CHECK(tight.add({1000000000, 0, 1}));
    CHECK(tight.add({0, 1, -1}) == false);
}

TEST_CASE("flatten_integral rejects fractions") {
    Matrix half = 0.5 * Matrix::ones(2, 2);
    CHECK_THROWS_AS(flatten_integral(half), StructuralError);
    CHECK(flatten_integral(Matrix::identity(2)) == std::vector<std::int64_t>{1, 0, 0, 1});
}

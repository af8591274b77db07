#include "cclab/exact.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "cclab/errors.hpp"

namespace cclab {

using BigInt = boost::multiprecision::cpp_int;

namespace {

BigInt row_gcd(const std::vector<BigInt>& row) {
    BigInt g = 0;
    for (const BigInt& x : row) {
        g = boost::multiprecision::gcd(g, x);
        if (g == 1) break;
    }
    return g;
}

void normalize(std::vector<BigInt>& row) {
    BigInt g = row_gcd(row);
    if (g > 1) {
        for (BigInt& x : row) x /= g;
    }
    for (const BigInt& x : row) {
        if (x != 0) {
            if (x < 0)
                for (BigInt& y : row) y = -y;
            break;
        }
    }
}

} // namespace

struct ExactSpan::Impl {
    // Echelon basis: basis[k] has its leading nonzero at pivot_col[k], and
    // pivot columns are strictly increasing.
    std::vector<std::vector<BigInt>> basis;
    std::vector<std::size_t> pivots;

    // Reduces `row` against the basis; returns true when a nonzero remainder
    // is left (and inserts it when `insert` is set).
    bool reduce(std::vector<BigInt> row, bool insert) {
        std::size_t k = 0;
        while (true) {
            std::size_t lead = row.size();
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (row[c] != 0) {
                    lead = c;
                    break;
                }
            }
            if (lead == row.size()) return false;
            while (k < basis.size() && pivots[k] < lead) ++k;
            if (k == basis.size() || pivots[k] > lead) {
                if (insert) {
                    normalize(row);
                    basis.insert(basis.begin() + static_cast<std::ptrdiff_t>(k), std::move(row));
                    pivots.insert(pivots.begin() + static_cast<std::ptrdiff_t>(k), lead);
                }
                return true;
            }
            // Cross-multiplied elimination keeps everything integral.
            const BigInt a = basis[k][lead];
            const BigInt b = row[lead];
            for (std::size_t c = lead; c < row.size(); ++c) {
                row[c] = row[c] * a - basis[k][c] * b;
            }
        }
    }
};

ExactSpan::ExactSpan() : impl_(std::make_unique<Impl>()) {}
ExactSpan::~ExactSpan() = default;
ExactSpan::ExactSpan(ExactSpan&&) noexcept = default;
ExactSpan& ExactSpan::operator=(ExactSpan&&) noexcept = default;

bool ExactSpan::add(const std::vector<std::int64_t>& row) {
    std::vector<BigInt> r(row.begin(), row.end());
    return impl_->reduce(std::move(r), true);
}

bool ExactSpan::contains(const std::vector<std::int64_t>& row) const {
    std::vector<BigInt> r(row.begin(), row.end());
    return !impl_->reduce(std::move(r), false);
}

std::size_t ExactSpan::dimension() const {
    return impl_->basis.size();
}

std::vector<std::int64_t> flatten_integral(const Matrix& m) {
    std::vector<std::int64_t> row;
    row.reserve(m.rows() * m.cols());
    for (double x : m.data()) {
        const double r = std::round(x);
        if (std::abs(x - r) > 1e-9) {
            throw StructuralError("matrix entry " + std::to_string(x) + " is not an integer");
        }
        row.push_back(static_cast<std::int64_t>(r));
    }
    return row;
}

std::size_t exact_span_dimension(const std::vector<Matrix>& family) {
    ExactSpan span;
    for (const Matrix& m : family) span.add(flatten_integral(m));
    return span.dimension();
}

} // namespace cclab

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cclab/matrix.hpp"

namespace cclab {

// Incremental row space over the rationals, specialised to integer rows.
// Rows are reduced by fraction-free eliminations on arbitrary-precision
// integers, so rank verdicts never depend on a floating threshold.
class ExactSpan {
public:
    ExactSpan();
    ~ExactSpan();
    ExactSpan(ExactSpan&&) noexcept;
    ExactSpan& operator=(ExactSpan&&) noexcept;

    // Returns true when the row enlarged the span.
    bool add(const std::vector<std::int64_t>& row);
    bool contains(const std::vector<std::int64_t>& row) const;
    std::size_t dimension() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Flattens an integral matrix into a row vector; throws StructuralError when
// an entry is not an integer.
std::vector<std::int64_t> flatten_integral(const Matrix& m);

std::size_t exact_span_dimension(const std::vector<Matrix>& family);

} // namespace cclab

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pbif::z2 {

/// A chain over Z2: strictly increasing row indices of the nonzero entries.
using Column = std::vector<std::uint32_t>;

/// Sparse column-major matrix over Z2.
struct Matrix {
    std::uint32_t rows = 0;
    std::vector<Column> columns;

    std::size_t cols() const { return columns.size(); }
};

/// Z2 column addition: symmetric difference of the index sets.
Column add_columns(const Column& a, const Column& b);

/// Result of left-to-right column reduction.
///
/// Nonzero reduced columns have pairwise distinct lows; `pairing` lists
/// (low(j), j) for every such column j.
struct ReducedMatrix {
    Matrix reduced;
    std::vector<std::int64_t> low;  // lowest remaining row index per column, -1 if zero
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairing;  // (birth, death) column pairs

    /// Columns that stay zero and are never a birth of a pair. For a square
    /// filtration boundary matrix these are the essential classes.
    std::vector<std::uint32_t> essential_columns() const;
};

/// Standard left-to-right reduction.
ReducedMatrix reduce(const Matrix& m);

/// Reduction of a square filtration boundary matrix with the clearing
/// optimization: columns are processed by descending cell dimension, and
/// columns killed by a pivot of one dimension up are skipped. `dims[j]` is
/// the dimension of cell j; the pairing equals that of plain reduce().
ReducedMatrix reduce(const Matrix& m, const std::vector<std::uint8_t>& dims);

/// Z2 rank by Gaussian elimination.
std::size_t rank(const Matrix& m);

/// Rank of the induced map on homology: rank([cyclesA | boundariesB]) -
/// rank(boundariesB), with both matrices written over the same row space.
/// Throws std::invalid_argument on mismatched row counts.
std::size_t image_rank(const Matrix& cycles_a, const Matrix& boundaries_b);

}  // namespace pbif::z2

#include "pbif/z2.hpp"

#include <algorithm>
#include <stdexcept>

namespace pbif::z2 {

Column add_columns(const Column& a, const Column& b) {
    Column out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

// xor `other` into `col` through a scratch buffer to avoid reallocating.
void add_into(Column& col, const Column& other, Column& scratch) {
    scratch.clear();
    std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                  std::back_inserter(scratch));
    col.swap(scratch);
}

ReducedMatrix reduce_impl(const Matrix& m, const std::vector<std::uint8_t>* dims) {
    const std::size_t n = m.cols();
    if (dims && (dims->size() != n || m.rows != n))
        throw std::invalid_argument("reduce: dims require a square filtration matrix");

    ReducedMatrix out;
    out.reduced.rows = m.rows;
    out.reduced.columns = m.columns;
    out.low.assign(n, -1);

    std::vector<std::int64_t> pivot_of_row(m.rows, -1);
    std::vector<char> cleared(n, 0);
    Column scratch;

    auto reduce_column = [&](std::size_t j) {
        Column& col = out.reduced.columns[j];
        while (!col.empty()) {
            std::uint32_t r = col.back();
            std::int64_t k = pivot_of_row[r];
            if (k < 0) break;
            add_into(col, out.reduced.columns[static_cast<std::size_t>(k)], scratch);
        }
        if (!col.empty()) {
            std::uint32_t r = col.back();
            out.low[j] = r;
            pivot_of_row[r] = static_cast<std::int64_t>(j);
            if (dims) {
                // Clearing: the birth column r is killed by j, so it must
                // reduce to zero; skip it when its dimension comes up.
                cleared[r] = 1;
                out.reduced.columns[r].clear();
            }
        }
    };

    if (dims) {
        std::uint8_t max_dim = 0;
        for (std::uint8_t d : *dims) max_dim = std::max(max_dim, d);
        for (int d = max_dim; d >= 0; --d)
            for (std::size_t j = 0; j < n; ++j)
                if ((*dims)[j] == d && !cleared[j]) reduce_column(j);
    } else {
        for (std::size_t j = 0; j < n; ++j) reduce_column(j);
    }

    for (std::size_t j = 0; j < n; ++j)
        if (out.low[j] >= 0)
            out.pairing.emplace_back(static_cast<std::uint32_t>(out.low[j]),
                                     static_cast<std::uint32_t>(j));
    return out;
}

}  // namespace

ReducedMatrix reduce(const Matrix& m) { return reduce_impl(m, nullptr); }

ReducedMatrix reduce(const Matrix& m, const std::vector<std::uint8_t>& dims) {
    return reduce_impl(m, &dims);
}

std::vector<std::uint32_t> ReducedMatrix::essential_columns() const {
    std::vector<char> is_birth(low.size(), 0);
    for (const auto& [birth, death] : pairing) is_birth[birth] = 1;
    std::vector<std::uint32_t> out;
    for (std::size_t j = 0; j < low.size(); ++j)
        if (low[j] < 0 && !is_birth[j]) out.push_back(static_cast<std::uint32_t>(j));
    return out;
}

namespace {

// Incremental Gaussian elimination keyed by lowest row index.
struct PivotTable {
    std::vector<Column> columns;  // by pivot row
    std::vector<char> present;
    Column scratch;

    explicit PivotTable(std::uint32_t rows) : columns(rows), present(rows, 0) {}

    // Returns true if the column was independent of the stored ones.
    bool insert(Column col) {
        while (!col.empty()) {
            std::uint32_t r = col.back();
            if (!present[r]) {
                present[r] = 1;
                columns[r] = std::move(col);
                return true;
            }
            add_into(col, columns[r], scratch);
        }
        return false;
    }
};

}  // namespace

std::size_t rank(const Matrix& m) {
    PivotTable table(m.rows);
    std::size_t r = 0;
    for (const Column& col : m.columns)
        if (table.insert(col)) ++r;
    return r;
}

std::size_t image_rank(const Matrix& cycles_a, const Matrix& boundaries_b) {
    if (cycles_a.rows != boundaries_b.rows)
        throw std::invalid_argument("image_rank: cycle and boundary matrices disagree on rows");
    // rank([A|B]) - rank(B): eliminate B first, then count the extra pivots
    // contributed by A.
    PivotTable table(boundaries_b.rows);
    for (const Column& col : boundaries_b.columns) table.insert(col);
    std::size_t r = 0;
    for (const Column& col : cycles_a.columns)
        if (table.insert(col)) ++r;
    return r;
}

}  // namespace pbif::z2

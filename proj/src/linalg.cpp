#include "lnd/linalg.hpp"

#include <stdexcept>

namespace lnd {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, const VarSetPtr& vs)
    : rows_(rows), cols_(cols), vs_(vs), data_(rows * cols, RatFn::zero(vs)) {}

namespace {

// Row-wise denominator clearing: multiply each row by the product of its
// entries' denominators (reduced per entry afterwards), yielding polynomials.
std::vector<std::vector<Poly>> clear_denominators(const RatMatrix& m) {
    std::vector<std::vector<Poly>> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Poly common = Poly::constant(m.varset(), Rat(1));
        for (std::size_t c = 0; c < m.cols(); ++c) common *= m.at(r, c).den();
        out[r].reserve(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const RatFn& e = m.at(r, c);
            out[r].push_back(e.num() * *try_divide(common, e.den()));
        }
    }
    return out;
}

long poly_pivot_size(const Poly& p) { return p.is_zero() ? -1 : p.total_degree(); }

}  // namespace

std::size_t symbolic_rank(const RatMatrix& m) {
    auto a = clear_denominators(m);
    std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    Poly prev = Poly::constant(m.varset(), Rat(1));
    std::size_t rank = 0;
    std::size_t k = 0;
    std::vector<std::size_t> colperm(cols);
    for (std::size_t c = 0; c < cols; ++c) colperm[c] = c;
    while (k < rows && k < cols) {
        // Full pivot: smallest total degree among nonzero candidates.
        std::size_t pr = rows, pc = cols;
        long best = -1;
        for (std::size_t r = k; r < rows; ++r) {
            for (std::size_t c = k; c < cols; ++c) {
                const Poly& e = a[r][colperm[c]];
                if (e.is_zero()) continue;
                long sz = poly_pivot_size(e);
                if (pr == rows || sz < best) {
                    pr = r;
                    pc = c;
                    best = sz;
                }
            }
        }
        if (pr == rows) break;  // all remaining entries are zero
        std::swap(a[k], a[pr]);
        std::swap(colperm[k], colperm[pc]);
        const Poly pivot = a[k][colperm[k]];
        for (std::size_t r = k + 1; r < rows; ++r) {
            for (std::size_t c = k + 1; c < cols; ++c) {
                Poly t = a[r][colperm[c]] * pivot - a[r][colperm[k]] * a[k][colperm[c]];
                a[r][colperm[c]] = *try_divide(t, prev);
            }
            a[r][colperm[k]] = Poly(m.varset());
        }
        prev = pivot;
        ++rank;
        ++k;
    }
    return rank;
}

std::optional<std::vector<RatFn>> solve_in_span(const RatMatrix& rows,
                                                const std::vector<RatFn>& target) {
    std::size_t k = rows.rows(), n = rows.cols();
    if (target.size() != n) throw std::invalid_argument("solve_in_span: target arity");
    // System A c = b with A[e][j] = rows(j, e): one equation per column of
    // `rows`, unknowns c_1..c_k.
    std::vector<std::vector<RatFn>> a(n, std::vector<RatFn>(k, RatFn::zero(rows.varset())));
    std::vector<RatFn> b = target;
    for (std::size_t e = 0; e < n; ++e)
        for (std::size_t j = 0; j < k; ++j) a[e][j] = rows.at(j, e);

    auto entry_size = [](const RatFn& f) {
        return f.num().total_degree() + f.den().total_degree();
    };

    std::vector<std::size_t> pivot_col_of_row(n, k);
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < n; ++col) {
        std::size_t pr = n;
        long best = 0;
        for (std::size_t r = row; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            long sz = entry_size(a[r][col]);
            if (pr == n || sz < best) {
                pr = r;
                best = sz;
            }
        }
        if (pr == n) continue;
        std::swap(a[row], a[pr]);
        std::swap(b[row], b[pr]);
        RatFn inv = RatFn::constant(rows.varset(), Rat(1)) / a[row][col];
        for (std::size_t c = col; c < k; ++c) a[row][c] = a[row][c] * inv;
        b[row] = b[row] * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            RatFn f = a[r][col];
            for (std::size_t c = col; c < k; ++c) a[r][c] = a[r][c] - f * a[row][c];
            b[r] = b[r] - f * b[row];
        }
        pivot_col_of_row[row] = col;
        ++row;
    }
    // Consistency: zero rows must have zero right-hand side.
    for (std::size_t r = row; r < n; ++r)
        if (!b[r].is_zero()) return std::nullopt;

    std::vector<RatFn> c(k, RatFn::zero(rows.varset()));
    for (std::size_t r = 0; r < row; ++r) c[pivot_col_of_row[r]] = b[r];
    return c;
}

std::size_t rat_rank(RatGrid m) {
    std::size_t rows = m.size();
    if (rows == 0) return 0;
    std::size_t cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pr = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (m[r][col] != 0) {
                pr = r;
                break;
            }
        }
        if (pr == rows) continue;
        std::swap(m[rank], m[pr]);
        Rat inv = 1 / m[rank][col];
        for (std::size_t c = col; c < cols; ++c) m[rank][c] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatGrid& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t pr = m.size();
        for (std::size_t r = rank; r < m.size(); ++r) {
            if (m[r][col] != 0) {
                pr = r;
                break;
            }
        }
        if (pr == m.size()) continue;
        std::swap(m[rank], m[pr]);
        Rat inv = 1 / m[rank][col];
        for (std::size_t c = 0; c < cols; ++c) m[rank][c] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        pivots.push_back(col);
        ++rank;
    }
    m.resize(rank, RatVec());
    return pivots;
}

}  // namespace

RatGrid rat_nullspace(const RatGrid& m_in, std::size_t cols) {
    RatGrid m = m_in;
    auto pivots = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    RatGrid basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    // Canonicalize the subspace basis itself.
    rref(basis, cols);
    return basis;
}

std::optional<RatVec> rat_solve(RatGrid m, RatVec b) {
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    std::vector<std::size_t> pivot_col(rows, cols);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pr = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (m[r][col] != 0) {
                pr = r;
                break;
            }
        }
        if (pr == rows) continue;
        std::swap(m[rank], m[pr]);
        std::swap(b[rank], b[pr]);
        Rat inv = 1 / m[rank][col];
        for (std::size_t c = col; c < cols; ++c) m[rank][c] *= inv;
        b[rank] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
            b[r] -= f * b[rank];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
    return x;
}

}  // namespace lnd

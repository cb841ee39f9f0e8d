#pragma once

#include <optional>
#include <vector>

#include "lnd/ratfn.hpp"

namespace lnd {

// Dense matrix over the rational-function field.
class RatMatrix {
public:
    RatMatrix(std::size_t rows, std::size_t cols, const VarSetPtr& vs);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RatFn& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const RatFn& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const VarSetPtr& varset() const { return vs_; }

private:
    std::size_t rows_, cols_;
    VarSetPtr vs_;
    std::vector<RatFn> data_;
};

// Rank over K(X): clears denominators row-wise, then runs fraction-free
// Bareiss elimination with full pivoting by smallest pivot degree.
std::size_t symbolic_rank(const RatMatrix& m);

// Finds c with sum_j c_j * row_j = target over K(X), or nullopt. When the
// rows are independent the solution is unique; otherwise free coefficients
// are set to 0.
std::optional<std::vector<RatFn>> solve_in_span(const RatMatrix& rows,
                                                const std::vector<RatFn>& target);

// Constant-matrix helpers (exact Gauss over the rationals).
using RatVec = std::vector<Rat>;
using RatGrid = std::vector<RatVec>;

std::size_t rat_rank(RatGrid m);

// Canonical basis of the nullspace of m (columns = unknowns): the reduced
// row echelon basis of the kernel subspace, rows ordered by leading column.
RatGrid rat_nullspace(const RatGrid& m, std::size_t cols);

// Solves m * x = b exactly; free unknowns are set to 0.
std::optional<RatVec> rat_solve(RatGrid m, RatVec b);

}  // namespace lnd

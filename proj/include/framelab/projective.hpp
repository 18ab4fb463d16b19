#pragma once

#include <map>
#include <optional>

#include "framelab/mat.hpp"

namespace framelab {

using ColScaling = std::map<Label, int>;

// Decide whether rowspace(a) = rowspace(b · D) for some nonsingular diagonal
// D, and produce D on success. Both matrices are brought to reduced echelon
// form over the shared column labels; the scaling constraints between pivot
// and non-pivot columns then propagate along a spanning forest of the
// nonzero-support graph, one free scalar per connected component.
inline std::optional<ColScaling> projectively_equivalent(const Mat& a, const Mat& b_in) {
    if (a.field() != b_in.field())
        throw std::invalid_argument("projectively_equivalent: field mismatch");
    {
        std::vector<Label> la = a.col_labels(), lb = b_in.col_labels();
        std::sort(la.begin(), la.end());
        std::sort(lb.begin(), lb.end());
        if (la != lb)
            throw std::invalid_argument("projectively_equivalent: column label sets differ");
    }
    const PrimeField& f = a.field();
    Mat b = b_in.cols_submatrix(a.col_labels());

    RrefResult ra = rref(a), rb = rref(b);
    if (ra.rank != rb.rank) return std::nullopt;
    if (ra.pivot_cols != rb.pivot_cols) return std::nullopt;

    const size_t nc = a.ncols();
    const size_t r = static_cast<size_t>(ra.rank);
    std::vector<bool> is_pivot(nc, false);
    std::vector<size_t> pivot_row(nc, 0);
    for (size_t i = 0; i < r; ++i) {
        is_pivot[ra.pivot_cols[i]] = true;
        pivot_row[ra.pivot_cols[i]] = i;
    }

    // Support must agree entrywise; collect ratio edges pivot-column -> column.
    struct Edge { size_t pivot_col, col; int ratio; };
    std::vector<std::vector<Edge>> adj(nc);
    for (size_t i = 0; i < r; ++i) {
        for (size_t e = 0; e < nc; ++e) {
            if (is_pivot[e]) continue;
            int p = ra.mat.at(i, e), q = rb.mat.at(i, e);
            if ((p == 0) != (q == 0)) return std::nullopt;
            if (p == 0) continue;
            size_t jc = ra.pivot_cols[i];
            int ratio = f.div(p, q); // d_e = ratio * d_{pivot}
            adj[jc].push_back({jc, e, ratio});
            adj[e].push_back({jc, e, ratio});
        }
    }
    // Zero columns must match too (a column can be zero only in both).
    for (size_t e = 0; e < nc; ++e) {
        bool za = true, zb = true;
        for (size_t i = 0; i < a.nrows() && za; ++i) za = a.at(i, e) == 0;
        for (size_t i = 0; i < b.nrows() && zb; ++i) zb = b.at(i, e) == 0;
        if (za != zb) return std::nullopt;
    }

    std::vector<int> d(nc, 0);
    for (size_t start = 0; start < nc; ++start) {
        if (d[start] != 0) continue;
        d[start] = 1;
        std::vector<size_t> stack{start};
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            for (const Edge& ed : adj[v]) {
                // Constraint: d[col] = ratio * d[pivot_col].
                int dp = d[ed.pivot_col], dc = d[ed.col];
                if (dp != 0 && dc != 0) {
                    if (dc != f.mul(ed.ratio, dp)) return std::nullopt;
                } else if (dp != 0) {
                    d[ed.col] = f.mul(ed.ratio, dp);
                    stack.push_back(ed.col);
                } else if (dc != 0) {
                    d[ed.pivot_col] = f.div(dc, ed.ratio);
                    stack.push_back(ed.pivot_col);
                }
            }
        }
    }

    // Defensive replay: the scaled matrix must reproduce the echelon form.
    Mat bd = b;
    for (size_t e = 0; e < nc; ++e) bd.scale_col(e, d[e]);
    RrefResult rbd = rref(bd);
    for (size_t i = 0; i < r; ++i)
        for (size_t e = 0; e < nc; ++e)
            if (rbd.mat.at(i, e) != ra.mat.at(i, e)) return std::nullopt;

    ColScaling out;
    for (size_t e = 0; e < nc; ++e) out[a.col_labels()[e]] = d[e];
    return out;
}

} // namespace framelab

#pragma once

#include <optional>

#include "framelab/mat.hpp"

namespace framelab {

// Stack two row sets under fresh row labels; the operands may reuse names.
inline Mat stack_rows_fresh(const Mat& a, const Mat& b) {
    Mat a2 = a, b2 = b;
    std::vector<Label> an, bn;
    for (size_t i = 0; i < a.nrows(); ++i) an.push_back("s" + std::to_string(i));
    for (size_t i = 0; i < b.nrows(); ++i) bn.push_back("s" + std::to_string(a.nrows() + i));
    a2.relabel_rows(an);
    b2.relabel_rows(bn);
    return a2.vstack(b2);
}

// A subspace of GF(p)^E, stored as a canonical RREF basis so that equality
// of subspaces is syntactic equality of bases.
class Subspace {
public:
    static Subspace from_rows(const Mat& rows) {
        RrefResult rr = rref(rows);
        std::vector<Label> names;
        for (int i = 0; i < rr.rank; ++i) names.push_back("d" + std::to_string(i));
        Mat basis(rows.field(), names, rows.col_labels());
        for (int i = 0; i < rr.rank; ++i)
            for (size_t j = 0; j < rows.ncols(); ++j) basis.set(i, j, rr.mat.at(i, j));
        return Subspace(std::move(basis), std::move(rr.pivot_cols));
    }

    static Subspace zero(PrimeField f, const std::vector<Label>& ambient) {
        return from_rows(Mat(f, {}, ambient));
    }

    static Subspace full(PrimeField f, const std::vector<Label>& ambient) {
        return from_rows(Mat::identity(f, ambient));
    }

    const PrimeField& field() const { return basis_.field(); }
    const Mat& basis() const { return basis_; }
    const std::vector<Label>& ambient() const { return basis_.col_labels(); }
    size_t ambient_dim() const { return basis_.ncols(); }
    int dim() const { return static_cast<int>(basis_.nrows()); }
    const std::vector<size_t>& pivots() const { return pivots_; }

    // Canonical representative of v modulo this subspace: eliminate the pivot
    // coordinates. The result is v minus a member, supported off the pivots.
    std::vector<uint8_t> reduce(std::vector<uint8_t> v) const {
        const PrimeField& f = field();
        if (v.size() != ambient_dim()) throw std::invalid_argument("Subspace::reduce: bad vector length");
        for (size_t i = 0; i < basis_.nrows(); ++i) {
            int c = v[pivots_[i]];
            if (c == 0) continue;
            int s = f.neg(c);
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = static_cast<uint8_t>(f.add(v[j], f.mul(s, basis_.at(i, j))));
        }
        return v;
    }

    bool contains(const std::vector<uint8_t>& v) const {
        auto r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](uint8_t x) { return x == 0; });
    }

    bool contains_subspace(const Subspace& o) const {
        check_same_ambient(o);
        for (size_t i = 0; i < o.basis_.nrows(); ++i)
            if (!contains(o.basis_.row_vector(o.basis_.row_labels()[i]))) return false;
        return true;
    }

    Subspace sum(const Subspace& o) const {
        check_same_ambient(o);
        return from_rows(stack_rows_fresh(basis_, o.basis_));
    }

    // U ∩ V = (U^⊥ + V^⊥)^⊥.
    Subspace intersect(const Subspace& o) const {
        check_same_ambient(o);
        Mat ku = kernel_basis(basis_);
        Mat kv = kernel_basis(o.basis_);
        return from_rows(kernel_basis(stack_rows_fresh(ku, kv)));
    }

    bool is_skew(const Subspace& o) const {
        return sum(o).dim() == dim() + o.dim();
    }

    // Image under the coordinate projection onto a subset of the ambient axes.
    Subspace project_coords(const std::vector<Label>& coords) const {
        return from_rows(basis_.cols_submatrix(coords));
    }

    // Image under a linear map given as a matrix acting on column vectors
    // (columns labeled by this ambient, rows by the target ambient).
    Subspace linear_image(const Mat& t) const {
        return from_rows(basis_.mul(t.transpose()));
    }

    // Span of the unit vectors on the non-pivot coordinates; a canonical
    // complement of this subspace.
    Subspace complement_canonical() const {
        std::vector<bool> is_pivot(ambient_dim(), false);
        for (size_t c : pivots_) is_pivot[c] = true;
        std::vector<Label> names;
        size_t k = 0;
        Mat rows(field(), {}, ambient());
        for (size_t c = 0; c < ambient_dim(); ++c)
            if (!is_pivot[c]) names.push_back("d" + std::to_string(k++));
        Mat b(field(), names, ambient());
        k = 0;
        for (size_t c = 0; c < ambient_dim(); ++c)
            if (!is_pivot[c]) { b.set(k, c, 1); ++k; }
        return from_rows(b);
    }

    // Re-embed into a larger ambient space (new coordinates read zero).
    Subspace extend_ambient(const std::vector<Label>& new_ambient) const {
        Mat b(field(), basis_.row_labels(), new_ambient);
        for (size_t i = 0; i < basis_.nrows(); ++i)
            for (size_t j = 0; j < basis_.ncols(); ++j)
                b.set(i, b.col_index(ambient()[j]), basis_.at(i, j));
        return from_rows(b);
    }

    // All p^dim member vectors, in lexicographic order of the coefficient
    // tuples against the canonical basis.
    std::vector<std::vector<uint8_t>> enumerate() const {
        const PrimeField& f = field();
        if (dim() > 20) throw std::domain_error("Subspace::enumerate: dimension too large");
        std::vector<std::vector<uint8_t>> out;
        std::vector<int> coeff(dim(), 0);
        while (true) {
            std::vector<uint8_t> v(ambient_dim(), 0);
            for (int i = 0; i < dim(); ++i) {
                if (coeff[i] == 0) continue;
                for (size_t j = 0; j < ambient_dim(); ++j)
                    v[j] = static_cast<uint8_t>(f.add(v[j], f.mul(coeff[i], basis_.at(i, j))));
            }
            out.push_back(std::move(v));
            int i = dim() - 1;
            while (i >= 0 && coeff[i] == f.p() - 1) coeff[i--] = 0;
            if (i < 0) break;
            ++coeff[i];
        }
        return out;
    }

    // If this subspace equals F^S x {0} for a coordinate subset S, return S.
    std::optional<std::vector<Label>> coordinate_support() const {
        std::vector<Label> support;
        for (size_t i = 0; i < basis_.nrows(); ++i) {
            size_t weight = 0, where = 0;
            for (size_t j = 0; j < basis_.ncols(); ++j)
                if (basis_.at(i, j) != 0) { ++weight; where = j; }
            if (weight != 1) return std::nullopt;
            support.push_back(ambient()[where]);
        }
        return support;
    }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    Subspace(Mat basis, std::vector<size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    void check_same_ambient(const Subspace& o) const {
        if (ambient() != o.ambient())
            throw std::invalid_argument("Subspace: ambient label mismatch");
    }

    Mat basis_;
    std::vector<size_t> pivots_;
};

// The w-component of v under the decomposition ambient = u ⊕ w.
inline std::vector<uint8_t> complementary_projection(const Subspace& u, const Subspace& w,
                                                     const std::vector<uint8_t>& v) {
    if (u.ambient() != w.ambient())
        throw std::invalid_argument("complementary_projection: ambient mismatch");
    if (!u.is_skew(w) || u.dim() + w.dim() != static_cast<int>(u.ambient_dim()))
        throw std::invalid_argument("complementary_projection: subspaces are not complementary");
    // Reducing v modulo u leaves v - (u-part'); the remainder still contains
    // the w-part expressed off u's pivots. Solve within w instead: write
    // v = a·U + b·W by elimination on the stacked basis.
    const PrimeField& f = u.field();
    Mat stacked = stack_rows_fresh(u.basis(), w.basis());
    // Solve x * stacked = v via transpose: stacked^T x^T = v^T.
    Mat st = stacked.transpose();
    Mat aug(f, st.row_labels(), [&] {
        std::vector<Label> cs = st.col_labels();
        cs.push_back("#v");
        return cs;
    }());
    for (size_t i = 0; i < st.nrows(); ++i) {
        for (size_t j = 0; j < st.ncols(); ++j) aug.set(i, j, st.at(i, j));
        aug.set(i, st.ncols(), v[i]);
    }
    RrefResult rr = rref(aug);
    // Unique solution: one pivot per stacked row, none in the augmented column.
    std::vector<int> x(stacked.nrows(), 0);
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
        if (rr.pivot_cols[i] == st.ncols())
            throw std::invalid_argument("complementary_projection: vector outside ambient span");
        x[rr.pivot_cols[i]] = rr.mat.at(i, st.ncols());
    }
    std::vector<uint8_t> out(u.ambient_dim(), 0);
    for (size_t i = u.basis().nrows(); i < stacked.nrows(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < out.size(); ++j)
            out[j] = static_cast<uint8_t>(f.add(out[j], f.mul(x[i], stacked.at(i, j))));
    }
    return out;
}

} // namespace framelab

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "framelab/gf.hpp"

namespace framelab {

using Label = std::string;

// Dense matrix over GF(p) whose rows and columns are indexed by string
// labels. Label order is part of the value: operations that combine two
// matrices align the shared side by label, not by position.
class Mat {
public:
    Mat(PrimeField f, std::vector<Label> rows, std::vector<Label> cols)
        : f_(f), rows_(std::move(rows)), cols_(std::move(cols)),
          a_(rows_.size() * cols_.size(), 0) {
        build_index(rows_, rindex_, "row");
        build_index(cols_, cindex_, "column");
    }

    static Mat identity(PrimeField f, const std::vector<Label>& labels) {
        Mat m(f, labels, labels);
        for (size_t i = 0; i < labels.size(); ++i) m.set(i, i, 1);
        return m;
    }

    static Mat from_entries(PrimeField f, std::vector<Label> rows, std::vector<Label> cols,
                            const std::vector<std::vector<int>>& entries) {
        Mat m(f, std::move(rows), std::move(cols));
        if (entries.size() != m.nrows())
            throw std::invalid_argument("Mat: entry row count mismatch");
        for (size_t i = 0; i < m.nrows(); ++i) {
            if (entries[i].size() != m.ncols())
                throw std::invalid_argument("Mat: entry column count mismatch");
            for (size_t j = 0; j < m.ncols(); ++j) m.set(i, j, f.normalize(entries[i][j]));
        }
        return m;
    }

    const PrimeField& field() const { return f_; }
    size_t nrows() const { return rows_.size(); }
    size_t ncols() const { return cols_.size(); }
    const std::vector<Label>& row_labels() const { return rows_; }
    const std::vector<Label>& col_labels() const { return cols_; }

    bool has_row(const Label& l) const { return rindex_.count(l) > 0; }
    bool has_col(const Label& l) const { return cindex_.count(l) > 0; }

    size_t row_index(const Label& l) const {
        auto it = rindex_.find(l);
        if (it == rindex_.end()) throw std::invalid_argument("Mat: unknown row label '" + l + "'");
        return it->second;
    }
    size_t col_index(const Label& l) const {
        auto it = cindex_.find(l);
        if (it == cindex_.end()) throw std::invalid_argument("Mat: unknown column label '" + l + "'");
        return it->second;
    }

    int at(size_t i, size_t j) const { return a_[i * cols_.size() + j]; }
    void set(size_t i, size_t j, int v) { a_[i * cols_.size() + j] = static_cast<uint8_t>(v); }

    int entry(const Label& r, const Label& c) const { return at(row_index(r), col_index(c)); }
    void set_entry(const Label& r, const Label& c, int v) { set(row_index(r), col_index(c), v); }

    std::vector<uint8_t> col_vector(const Label& c) const {
        size_t j = col_index(c);
        std::vector<uint8_t> v(nrows());
        for (size_t i = 0; i < nrows(); ++i) v[i] = static_cast<uint8_t>(at(i, j));
        return v;
    }
    std::vector<uint8_t> row_vector(const Label& r) const {
        size_t i = row_index(r);
        std::vector<uint8_t> v(ncols());
        for (size_t j = 0; j < ncols(); ++j) v[j] = static_cast<uint8_t>(at(i, j));
        return v;
    }

    size_t col_weight(size_t j) const {
        size_t w = 0;
        for (size_t i = 0; i < nrows(); ++i) w += at(i, j) != 0;
        return w;
    }
    bool col_is_zero(size_t j) const { return col_weight(j) == 0; }

    Mat submatrix(const std::vector<Label>& rows, const std::vector<Label>& cols) const {
        Mat m(f_, rows, cols);
        for (size_t i = 0; i < rows.size(); ++i) {
            size_t si = row_index(rows[i]);
            for (size_t j = 0; j < cols.size(); ++j) m.set(i, j, at(si, col_index(cols[j])));
        }
        return m;
    }
    Mat rows_submatrix(const std::vector<Label>& rows) const { return submatrix(rows, cols_); }
    Mat cols_submatrix(const std::vector<Label>& cols) const { return submatrix(rows_, cols); }

    Mat transpose() const {
        Mat m(f_, cols_, rows_);
        for (size_t i = 0; i < nrows(); ++i)
            for (size_t j = 0; j < ncols(); ++j) m.set(j, i, at(i, j));
        return m;
    }

    // Product; the inner side is aligned by label (this->cols vs other->rows).
    Mat mul(const Mat& other) const {
        if (ncols() != other.nrows())
            throw std::invalid_argument("Mat::mul: inner dimension mismatch");
        std::vector<size_t> align(ncols());
        for (size_t j = 0; j < ncols(); ++j) align[j] = other.row_index(cols_[j]);
        Mat m(f_, rows_, other.cols_);
        for (size_t i = 0; i < nrows(); ++i)
            for (size_t k = 0; k < ncols(); ++k) {
                int v = at(i, k);
                if (v == 0) continue;
                size_t ok = align[k];
                for (size_t j = 0; j < other.ncols(); ++j) {
                    int w = other.at(ok, j);
                    if (w) m.set(i, j, f_.add(m.at(i, j), f_.mul(v, w)));
                }
            }
        return m;
    }

    // Stack on top of `other`; columns aligned by label (sets must coincide).
    Mat vstack(const Mat& other) const {
        std::vector<size_t> align(ncols());
        if (other.ncols() != ncols())
            throw std::invalid_argument("Mat::vstack: column sets differ");
        for (size_t j = 0; j < ncols(); ++j) align[j] = other.col_index(cols_[j]);
        std::vector<Label> rows = rows_;
        rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
        Mat m(f_, rows, cols_);
        for (size_t i = 0; i < nrows(); ++i)
            for (size_t j = 0; j < ncols(); ++j) m.set(i, j, at(i, j));
        for (size_t i = 0; i < other.nrows(); ++i)
            for (size_t j = 0; j < ncols(); ++j) m.set(nrows() + i, j, other.at(i, align[j]));
        return m;
    }

    // Place side by side; rows aligned by label (sets must coincide).
    Mat hstack(const Mat& other) const {
        if (other.nrows() != nrows())
            throw std::invalid_argument("Mat::hstack: row sets differ");
        std::vector<size_t> align(nrows());
        for (size_t i = 0; i < nrows(); ++i) align[i] = other.row_index(rows_[i]);
        std::vector<Label> cols = cols_;
        cols.insert(cols.end(), other.cols_.begin(), other.cols_.end());
        Mat m(f_, rows_, cols);
        for (size_t i = 0; i < nrows(); ++i) {
            for (size_t j = 0; j < ncols(); ++j) m.set(i, j, at(i, j));
            for (size_t j = 0; j < other.ncols(); ++j) m.set(i, ncols() + j, other.at(align[i], j));
        }
        return m;
    }

    void scale_row(size_t i, int s) {
        for (size_t j = 0; j < ncols(); ++j) set(i, j, f_.mul(at(i, j), s));
    }
    void scale_col(size_t j, int s) {
        for (size_t i = 0; i < nrows(); ++i) set(i, j, f_.mul(at(i, j), s));
    }
    // row[dst] += s * row[src]
    void axpy_row(size_t dst, int s, size_t src) {
        if (s == 0) return;
        for (size_t j = 0; j < ncols(); ++j)
            set(dst, j, f_.add(at(dst, j), f_.mul(s, at(src, j))));
    }
    // col[dst] += s * col[src]
    void axpy_col(size_t dst, int s, size_t src) {
        if (s == 0) return;
        for (size_t i = 0; i < nrows(); ++i)
            set(i, dst, f_.add(at(i, dst), f_.mul(s, at(i, src))));
    }
    void swap_rows(size_t i, size_t k) {
        if (i == k) return;
        for (size_t j = 0; j < ncols(); ++j) {
            int t = at(i, j);
            set(i, j, at(k, j));
            set(k, j, t);
        }
        std::swap(rows_[i], rows_[k]);
        rindex_[rows_[i]] = i;
        rindex_[rows_[k]] = k;
    }

    void relabel_rows(std::vector<Label> rows) {
        if (rows.size() != nrows()) throw std::invalid_argument("Mat: relabel_rows size mismatch");
        rows_ = std::move(rows);
        rindex_.clear();
        build_index(rows_, rindex_, "row");
    }
    void relabel_cols(std::vector<Label> cols) {
        if (cols.size() != ncols()) throw std::invalid_argument("Mat: relabel_cols size mismatch");
        cols_ = std::move(cols);
        cindex_.clear();
        build_index(cols_, cindex_, "column");
    }

    bool operator==(const Mat& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    std::string to_string() const {
        std::ostringstream os;
        os << "GF(" << f_.p() << ") " << nrows() << "x" << ncols() << "\n      ";
        for (const auto& c : cols_) os << c << " ";
        os << "\n";
        for (size_t i = 0; i < nrows(); ++i) {
            os << rows_[i] << ": ";
            for (size_t j = 0; j < ncols(); ++j) os << at(i, j) << " ";
            os << "\n";
        }
        return os.str();
    }

private:
    static void build_index(const std::vector<Label>& labels,
                            std::unordered_map<Label, size_t>& index, const char* side) {
        for (size_t i = 0; i < labels.size(); ++i) {
            if (!index.emplace(labels[i], i).second)
                throw std::invalid_argument(std::string("Mat: duplicate ") + side + " label '" + labels[i] + "'");
        }
    }

    PrimeField f_;
    std::vector<Label> rows_, cols_;
    std::unordered_map<Label, size_t> rindex_, cindex_;
    std::vector<uint8_t> a_;
};

struct RrefResult {
    Mat mat;
    int rank = 0;
    std::vector<size_t> pivot_cols;
};

namespace detail {

// Packed elimination for GF(2); returns rank and pivot columns, leaves the
// packed rows in reduced echelon form.
inline int rref_gf2(std::vector<std::vector<uint64_t>>& rows, size_t ncols,
                    std::vector<size_t>& pivots) {
    const size_t nr = rows.size();
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < nr; ++c) {
        size_t w = c >> 6;
        uint64_t bit = 1ull << (c & 63);
        size_t sel = nr;
        for (size_t i = r; i < nr; ++i)
            if (rows[i][w] & bit) { sel = i; break; }
        if (sel == nr) continue;
        std::swap(rows[r], rows[sel]);
        for (size_t i = 0; i < nr; ++i) {
            if (i != r && (rows[i][w] & bit)) {
                for (size_t k = 0; k < rows[i].size(); ++k) rows[i][k] ^= rows[r][k];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return static_cast<int>(r);
}

} // namespace detail

// Reduced row echelon form. Pivot choice is deterministic: leftmost column,
// topmost unprocessed row.
inline RrefResult rref(const Mat& m) {
    const PrimeField& f = m.field();
    const size_t nr = m.nrows(), nc = m.ncols();

    if (f.p() == 2 && nc >= 32) {
        const size_t words = (nc + 63) / 64;
        std::vector<std::vector<uint64_t>> rows(nr, std::vector<uint64_t>(words, 0));
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j)
                if (m.at(i, j)) rows[i][j >> 6] |= 1ull << (j & 63);
        std::vector<size_t> pivots;
        int rank = detail::rref_gf2(rows, nc, pivots);
        Mat out(f, m.row_labels(), m.col_labels());
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j)
                if (rows[i][j >> 6] & (1ull << (j & 63))) out.set(i, j, 1);
        return {std::move(out), rank, std::move(pivots)};
    }

    Mat out = m;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < nc && r < nr; ++c) {
        size_t sel = nr;
        for (size_t i = r; i < nr; ++i)
            if (out.at(i, c) != 0) { sel = i; break; }
        if (sel == nr) continue;
        out.swap_rows(r, sel);
        out.scale_row(r, f.inv(out.at(r, c)));
        for (size_t i = 0; i < nr; ++i)
            if (i != r && out.at(i, c) != 0) out.axpy_row(i, f.neg(out.at(i, c)), r);
        pivots.push_back(c);
        ++r;
    }
    // Restore input row labels: the echelon content matters, the permuted
    // label order does not.
    out.relabel_rows(m.row_labels());
    return {std::move(out), static_cast<int>(r), std::move(pivots)};
}

inline int rank(const Mat& m) { return rref(m).rank; }

// Rows spanning the right kernel {x : m x = 0}, in canonical reduced form.
inline Mat kernel_basis(const Mat& m) {
    RrefResult rr = rref(m);
    const PrimeField& f = m.field();
    const size_t nc = m.ncols();
    std::vector<bool> is_pivot(nc, false);
    for (size_t c : rr.pivot_cols) is_pivot[c] = true;

    std::vector<Label> knames;
    size_t free_count = nc - rr.pivot_cols.size();
    for (size_t k = 0; k < free_count; ++k) knames.push_back("k" + std::to_string(k));
    Mat ker(f, knames, m.col_labels());
    size_t kr = 0;
    for (size_t c = 0; c < nc; ++c) {
        if (is_pivot[c]) continue;
        ker.set(kr, c, 1);
        for (size_t i = 0; i < rr.pivot_cols.size(); ++i)
            ker.set(kr, rr.pivot_cols[i], f.neg(rr.mat.at(i, c)));
        ++kr;
    }
    RrefResult krr = rref(ker);
    krr.mat.relabel_rows(knames);
    return krr.mat;
}

inline Mat inverse(const Mat& m) {
    if (m.nrows() != m.ncols()) throw std::invalid_argument("inverse: matrix not square");
    const size_t n = m.nrows();
    if (n == 0) return Mat(m.field(), {}, {});
    std::vector<Label> aug_cols;
    for (size_t j = 0; j < n; ++j) aug_cols.push_back("#c" + std::to_string(j));
    Mat right = Mat::identity(m.field(), m.col_labels());
    right.relabel_rows(m.row_labels());
    right.relabel_cols(aug_cols);
    Mat aug = m.hstack(right);
    RrefResult rr = rref(aug);
    if (static_cast<size_t>(rr.rank) != n || rr.pivot_cols.back() != n - 1)
        throw std::invalid_argument("inverse: matrix is singular");
    Mat inv = rr.mat.cols_submatrix(aug_cols);
    inv.relabel_cols(m.row_labels());
    inv.relabel_rows(m.col_labels());
    return inv;
}

// Online rank computation: rows are stored with pairwise distinct leading
// positions and zeros before their lead, so insertion is a single sweep.
class IncrementalBasis {
public:
    IncrementalBasis(PrimeField f, size_t dim) : f_(f), row_at_lead_(dim) {}

    // Returns true if v was independent of the current span.
    bool insert(std::vector<uint8_t> v) {
        for (size_t c = 0; c < v.size(); ++c) {
            if (v[c] == 0) continue;
            auto& slot = row_at_lead_[c];
            if (slot.empty()) {
                int s = f_.inv(v[c]);
                if (s != 1)
                    for (auto& x : v) x = static_cast<uint8_t>(f_.mul(x, s));
                slot = std::move(v);
                ++rank_;
                return true;
            }
            int s = f_.neg(v[c]);
            for (size_t t = c; t < v.size(); ++t)
                v[t] = static_cast<uint8_t>(f_.add(v[t], f_.mul(s, slot[t])));
        }
        return false;
    }

    bool contains(std::vector<uint8_t> v) const {
        for (size_t c = 0; c < v.size(); ++c) {
            if (v[c] == 0) continue;
            const auto& slot = row_at_lead_[c];
            if (slot.empty()) return false;
            int s = f_.neg(v[c]);
            for (size_t t = c; t < v.size(); ++t)
                v[t] = static_cast<uint8_t>(f_.add(v[t], f_.mul(s, slot[t])));
        }
        return true;
    }

    int rank() const { return rank_; }

private:
    PrimeField f_;
    std::vector<std::vector<uint8_t>> row_at_lead_;
    int rank_ = 0;
};

// Scale a nonzero vector so its first nonzero entry is 1; returns the scalar
// applied. Zero vectors come back unchanged with scalar 1.
inline int normalize_vector(const PrimeField& f, std::vector<uint8_t>& v) {
    for (uint8_t x : v) {
        if (x != 0) {
            int s = f.inv(x);
            if (s != 1)
                for (auto& e : v) e = static_cast<uint8_t>(f.mul(e, s));
            return s;
        }
    }
    return 1;
}

} // namespace framelab

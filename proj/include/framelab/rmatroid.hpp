#pragma once

#include <functional>
#include <map>
#include <set>

#include "framelab/projective.hpp"
#include "framelab/subspace.hpp"

namespace framelab {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A matroid given by a representation over GF(p): the ground set is the
// column label set, and the row space is taken up to nonsingular diagonal
// column scaling. Ground labels are kept sorted and the stored matrix is the
// canonical reduced form of the input with redundant rows dropped.
class RepresentedMatroid {
public:
    explicit RepresentedMatroid(const Mat& m) : rep_(canonicalize(m)) {}

    const PrimeField& field() const { return rep_.field(); }
    const Mat& rep() const { return rep_; }
    const std::vector<Label>& ground() const { return rep_.col_labels(); }
    size_t size() const { return rep_.ncols(); }
    int rank() const { return static_cast<int>(rep_.nrows()); }

    bool has_element(const Label& e) const { return rep_.has_col(e); }

    int rank_of(const std::vector<Label>& x) const {
        std::vector<Label> u = unique_labels(x);
        for (const Label& e : u) rep_.col_index(e);
        return framelab::rank(rep_.cols_submatrix(u));
    }

    bool operator==(const RepresentedMatroid& o) const {
        if (ground() != o.ground() || field() != o.field()) return false;
        return projectively_equivalent(rep_, o.rep_).has_value();
    }
    bool operator!=(const RepresentedMatroid& o) const { return !(*this == o); }

    static std::vector<Label> unique_labels(std::vector<Label> x) {
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        return x;
    }

private:
    static Mat canonicalize(const Mat& m) {
        std::vector<Label> cols = m.col_labels();
        std::sort(cols.begin(), cols.end());
        RrefResult rr = rref(m.cols_submatrix(cols));
        std::vector<Label> rows;
        for (int i = 0; i < rr.rank; ++i) rows.push_back("r" + std::to_string(i));
        Mat rep(m.field(), rows, cols);
        for (int i = 0; i < rr.rank; ++i)
            for (size_t j = 0; j < cols.size(); ++j) rep.set(i, j, rr.mat.at(i, j));
        return rep;
    }

    Mat rep_;
};

inline std::vector<Label> labels_minus(const std::vector<Label>& all, const std::vector<Label>& drop) {
    std::set<Label> d(drop.begin(), drop.end());
    std::vector<Label> out;
    for (const Label& e : all)
        if (!d.count(e)) out.push_back(e);
    return out;
}

inline RepresentedMatroid delete_elements(const RepresentedMatroid& m, const std::vector<Label>& x) {
    for (const Label& e : x) m.rep().col_index(e);
    return RepresentedMatroid(m.rep().cols_submatrix(labels_minus(m.ground(), x)));
}

inline RepresentedMatroid dual(const RepresentedMatroid& m) {
    return RepresentedMatroid(kernel_basis(m.rep()));
}

// Contraction by the definition: dual, delete, dual.
inline RepresentedMatroid contract_elements(const RepresentedMatroid& m, const std::vector<Label>& x) {
    return dual(delete_elements(dual(m), x));
}

// Contraction by row reduction: pivot away a maximal independent subset of x,
// then drop x's columns and the pivot rows. Agrees with contract_elements.
inline RepresentedMatroid contract_elements_fast(const RepresentedMatroid& m, const std::vector<Label>& x) {
    std::vector<Label> xs = RepresentedMatroid::unique_labels(x);
    for (const Label& e : xs) m.rep().col_index(e);
    Mat work = m.rep();
    const PrimeField& f = work.field();
    std::vector<bool> row_gone(work.nrows(), false);
    for (const Label& e : xs) {
        size_t c = work.col_index(e);
        size_t piv = work.nrows();
        for (size_t i = 0; i < work.nrows(); ++i)
            if (!row_gone[i] && work.at(i, c) != 0) { piv = i; break; }
        if (piv == work.nrows()) continue; // dependent on already-contracted part
        work.scale_row(piv, f.inv(work.at(piv, c)));
        for (size_t i = 0; i < work.nrows(); ++i)
            if (i != piv && work.at(i, c) != 0) work.axpy_row(i, f.neg(work.at(i, c)), piv);
        row_gone[piv] = true;
    }
    std::vector<Label> keep_rows;
    for (size_t i = 0; i < work.nrows(); ++i)
        if (!row_gone[i]) keep_rows.push_back(work.row_labels()[i]);
    return RepresentedMatroid(work.submatrix(keep_rows, labels_minus(m.ground(), xs)));
}

struct SimplifyResult {
    RepresentedMatroid matroid;
    long long epsilon = 0;
    // Every non-loop element maps to the representative of its parallel class.
    std::map<Label, Label> class_rep;
};

inline SimplifyResult simplify(const RepresentedMatroid& m) {
    const PrimeField& f = m.field();
    std::map<std::vector<uint8_t>, Label> seen;
    std::map<Label, Label> class_rep;
    std::vector<Label> keep;
    for (const Label& e : m.ground()) {
        std::vector<uint8_t> v = m.rep().col_vector(e);
        if (std::all_of(v.begin(), v.end(), [](uint8_t b) { return b == 0; }))
            continue; // loop
        normalize_vector(f, v);
        auto it = seen.find(v);
        if (it == seen.end()) {
            seen.emplace(std::move(v), e);
            keep.push_back(e);
            class_rep[e] = e;
        } else {
            class_rep[e] = it->second;
        }
    }
    return {RepresentedMatroid(m.rep().cols_submatrix(keep)),
            static_cast<long long>(keep.size()), std::move(class_rep)};
}

inline long long epsilon(const RepresentedMatroid& m) { return simplify(m).epsilon; }

inline bool is_simple(const RepresentedMatroid& m) {
    return epsilon(m) == static_cast<long long>(m.size());
}

inline int lambda(const RepresentedMatroid& m, const std::vector<Label>& a) {
    return m.rank_of(a) + m.rank_of(labels_minus(m.ground(), a)) - m.rank();
}

// Exhaustive partition scan: for every partition (A, B) of the ground set
// with lambda(A) < k-1, one side must span.
inline bool is_vertically_k_connected(const RepresentedMatroid& m, int k) {
    if (k > m.rank()) throw std::domain_error("is_vertically_k_connected: k exceeds rank");
    const size_t n = m.size();
    if (n > 20) throw std::domain_error("is_vertically_k_connected: ground set larger than 20");
    if (k <= 1) return true;

    const PrimeField& f = m.field();
    const int r = m.rank();
    std::vector<std::vector<uint8_t>> cols;
    for (const Label& e : m.ground()) cols.push_back(m.rep().col_vector(e));

    auto mask_rank = [&](uint32_t mask) {
        IncrementalBasis basis(f, static_cast<size_t>(r));
        for (size_t j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            basis.insert(cols[j]);
            if (basis.rank() == r) return r;
        }
        return basis.rank();
    };

    const uint32_t full = n == 32 ? 0xffffffffu : ((1u << n) - 1);
    for (uint32_t a = 0; a <= full / 2; ++a) { // fix top element in B to halve
        uint32_t b = full & ~a;
        int ra = mask_rank(a), rb = mask_rank(b);
        if (ra + rb - r < k - 1 && ra < r && rb < r) return false;
    }
    return true;
}

// Does the row space contain a vector with all coordinates nonzero?
// Depth-first search over combinations of the reduced basis rows, pruning a
// branch as soon as some coordinate is forced to zero.
inline bool is_affine_restriction(const RepresentedMatroid& m) {
    if (!is_simple(m)) throw std::invalid_argument("is_affine_restriction: matroid must be simple");
    const PrimeField& f = m.field();
    const Mat& rep = m.rep();
    const size_t r = rep.nrows(), n = rep.ncols();
    if (n == 0) return true;
    if (r == 0) return false;

    // For each column, the last basis row with a nonzero entry: once the
    // search depth passes it the coordinate is final.
    std::vector<size_t> last_row(n, 0);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < r; ++i)
            if (rep.at(i, j) != 0) last_row[j] = i;

    std::vector<std::vector<size_t>> finalized(r);
    for (size_t j = 0; j < n; ++j) finalized[last_row[j]].push_back(j);

    std::vector<uint8_t> acc(n, 0);
    long long nodes = 0;
    std::function<bool(size_t)> dfs = [&](size_t depth) -> bool {
        if (++nodes > 20000000)
            throw BudgetExceeded("is_affine_restriction: search budget exceeded");
        if (depth == r)
            return std::all_of(acc.begin(), acc.end(), [](uint8_t x) { return x != 0; });
        for (int coeff = 0; coeff < f.p(); ++coeff) {
            std::vector<uint8_t> saved = acc;
            if (coeff != 0)
                for (size_t j = 0; j < n; ++j)
                    acc[j] = static_cast<uint8_t>(f.add(acc[j], f.mul(coeff, rep.at(depth, j))));
            bool ok = true;
            for (size_t j : finalized[depth])
                if (acc[j] == 0) { ok = false; break; }
            if (ok && dfs(depth + 1)) return true;
            acc = std::move(saved);
        }
        return false;
    };
    return dfs(0);
}

} // namespace framelab

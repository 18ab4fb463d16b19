#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "framelab/mat.hpp"
#include "framelab/subspace.hpp"
#include "framelab/templates.hpp"

namespace framelab {

// One class-preserving rewrite applied during reduction, with snapshots.
struct ReductionPass {
    std::string name;
    std::string evidence;
    FrameTemplate before;
    FrameTemplate after;
};
using ReductionTrace = std::vector<ReductionPass>;

namespace detail {

inline std::string join_labels(const std::vector<Label>& ls) {
    if (ls.empty()) return "-";
    std::string out;
    for (size_t i = 0; i < ls.size(); ++i) {
        if (i) out += ",";
        out += ls[i];
    }
    return out;
}

inline void check_sublabels(const std::vector<Label>& part, const std::vector<Label>& whole,
                            const char* what) {
    std::set<Label> w(whole.begin(), whole.end()), seen;
    for (const Label& l : part) {
        if (!w.count(l)) throw std::invalid_argument(std::string(what) + ": label outside the set");
        if (!seen.insert(l).second)
            throw std::invalid_argument(std::string(what) + ": duplicate label");
    }
}

}  // namespace detail

// Remove rows xhat and columns chat from the template. Sound whenever the
// chat-columns of any respecting matrix live entirely in the xhat rows and
// those rows are fully consumed by contracting them: Delta vanishes on chat,
// the kept rows of A1 vanish on chat, and A1[xhat, chat] has full row rank.
inline FrameTemplate contract_template(const FrameTemplate& phi, const std::vector<Label>& xhat,
                                       const std::vector<Label>& chat) {
    detail::check_sublabels(xhat, phi.x(), "contract_template rows");
    detail::check_sublabels(chat, phi.c(), "contract_template columns");

    if (phi.delta().project_coords(chat).dim() != 0)
        throw std::invalid_argument("contract_template: Delta must vanish on the dropped columns");
    std::vector<Label> xkeep = labels_minus(phi.x(), xhat);
    for (const Label& r : xkeep)
        for (const Label& c : chat)
            if (phi.a1().entry(r, c) != 0)
                throw std::invalid_argument("contract_template: kept rows must vanish on the dropped columns");
    if (rank(phi.a1().submatrix(xhat, chat)) != static_cast<int>(xhat.size()))
        throw std::invalid_argument("contract_template: dropped block must have full row rank");

    std::vector<Label> ckeep = labels_minus(phi.c(), chat);
    std::vector<Label> cols = ckeep;
    cols.insert(cols.end(), phi.y0().begin(), phi.y0().end());
    cols.insert(cols.end(), phi.y1().begin(), phi.y1().end());
    return FrameTemplate(phi.gamma(), ckeep, xkeep, phi.y0(), phi.y1(),
                         phi.a1().submatrix(xkeep, cols), phi.delta().project_coords(cols),
                         phi.lambda().project_coords(xkeep));
}

// Row operations within X: A1 becomes U*A1 and Lambda becomes U*Lambda.
inline FrameTemplate apply_unitary(const FrameTemplate& phi, const Mat& u) {
    const size_t n = phi.x().size();
    std::set<Label> xs(phi.x().begin(), phi.x().end());
    std::set<Label> ur(u.row_labels().begin(), u.row_labels().end());
    std::set<Label> uc(u.col_labels().begin(), u.col_labels().end());
    if (u.nrows() != n || u.ncols() != n || ur != xs || uc != xs)
        throw std::invalid_argument("apply_unitary: transform must be labeled by X");
    if (rank(u) != static_cast<int>(n))
        throw std::invalid_argument("apply_unitary: transform is singular");
    return FrameTemplate(phi.gamma(), phi.c(), phi.x(), phi.y0(), phi.y1(), u.mul(phi.a1()),
                         phi.delta(), phi.lambda().linear_image(u));
}

// Replace Delta by its projection onto the canonical complement of
// W = rowspace(A1[x1]), valid when Lambda vanishes on x1: the difference can
// be restored by adding x1-rows to the rows below X, which leaves every
// frame and shift-eligible column untouched.
inline FrameTemplate project_delta(const FrameTemplate& phi, const std::vector<Label>& x1) {
    detail::check_sublabels(x1, phi.x(), "project_delta rows");
    if (phi.lambda().project_coords(x1).dim() != 0)
        throw std::invalid_argument("project_delta: Lambda must vanish on the chosen rows");

    Subspace w = Subspace::from_rows(phi.a1().rows_submatrix(x1));
    if (w.dim() == 0 || phi.delta().dim() == 0) return phi;
    Subspace v = w.complement_canonical();

    const Mat& b = phi.delta().basis();
    Mat nb(phi.field(), b.row_labels(), b.col_labels());
    for (size_t i = 0; i < b.nrows(); ++i) {
        std::vector<uint8_t> row(b.ncols());
        for (size_t j = 0; j < b.ncols(); ++j) row[j] = static_cast<uint8_t>(b.at(i, j));
        std::vector<uint8_t> pv = complementary_projection(w, v, row);
        for (size_t j = 0; j < b.ncols(); ++j) nb.set(i, j, pv[j]);
    }
    return FrameTemplate(phi.gamma(), phi.c(), phi.x(), phi.y0(), phi.y1(), phi.a1(),
                         Subspace::from_rows(nb), phi.lambda());
}

// Re-express Delta as the span of units on fresh C-columns: one new X-row
// per basis vector carries the old vector into A1, paired with a fresh
// pivot column.
inline FrameTemplate normalize_delta(const FrameTemplate& phi) {
    const int d = phi.delta().dim();
    if (d == 0) return phi;
    const PrimeField& f = phi.field();

    std::set<Label> used;
    for (const auto* block : {&phi.c(), &phi.x(), &phi.y0(), &phi.y1()})
        used.insert(block->begin(), block->end());
    auto fresh = [&used](const char* stem, int count) {
        std::vector<Label> out;
        for (int k = 1; static_cast<int>(out.size()) < count; ++k) {
            Label l = std::string(stem) + std::to_string(k);
            if (used.insert(l).second) out.push_back(l);
        }
        return out;
    };
    std::vector<Label> chat = fresh("c#", d);
    std::vector<Label> xhat = fresh("x#", d);

    std::vector<Label> rows = phi.x();
    rows.insert(rows.end(), xhat.begin(), xhat.end());
    std::vector<Label> oldcols = phi.cy_labels();
    std::vector<Label> cols = oldcols;
    cols.insert(cols.end(), chat.begin(), chat.end());

    Mat a1(f, rows, cols);
    for (const Label& r : phi.x())
        for (const Label& c : oldcols) a1.set_entry(r, c, phi.a1().entry(r, c));
    const Mat& db = phi.delta().basis();
    for (int i = 0; i < d; ++i) {
        for (size_t j = 0; j < oldcols.size(); ++j)
            a1.set_entry(xhat[i], oldcols[j], db.at(i, j));
        a1.set_entry(xhat[i], chat[i], 1);
    }

    Mat deltab(f, chat, cols);
    for (int i = 0; i < d; ++i) deltab.set_entry(chat[i], chat[i], 1);

    std::vector<Label> cnew = phi.c();
    cnew.insert(cnew.end(), chat.begin(), chat.end());
    return FrameTemplate(phi.gamma(), cnew, rows, phi.y0(), phi.y1(), a1,
                         Subspace::from_rows(deltab), phi.lambda().extend_ambient(rows));
}

// Delta is exactly the coordinate space on C and Lambda is a coordinate
// subspace of F^X.
inline bool is_y_reduced(const FrameTemplate& phi) {
    std::vector<Label> y = phi.y0();
    y.insert(y.end(), phi.y1().begin(), phi.y1().end());
    if (phi.delta().project_coords(y).dim() != 0) return false;
    if (phi.delta().dim() != static_cast<int>(phi.c().size())) return false;
    return phi.lambda().coordinate_support().has_value();
}

// The partition (X0, X1) witnessing the reduced form: Lambda is the
// coordinate space on X0; Delta factors as the full space on C times a
// subspace on Y; A1[X1, C] = 0; and the rows of A1[X1] are independent and
// span a subspace meeting Delta only in zero.
inline std::optional<std::pair<std::vector<Label>, std::vector<Label>>> reduced_partition(
    const FrameTemplate& phi) {
    auto sup = phi.lambda().coordinate_support();
    if (!sup) return std::nullopt;
    std::vector<Label> x0 = *sup;
    std::sort(x0.begin(), x0.end());
    std::vector<Label> x1 = labels_minus(phi.x(), x0);

    const size_t ncy = phi.cy_labels().size();
    for (size_t i = 0; i < phi.c().size(); ++i) {
        std::vector<uint8_t> unit(ncy, 0);
        unit[i] = 1;
        if (!phi.delta().contains(unit)) return std::nullopt;
    }
    std::vector<Label> y = phi.y0();
    y.insert(y.end(), phi.y1().begin(), phi.y1().end());
    if (phi.delta().dim() !=
        static_cast<int>(phi.c().size()) + phi.delta().project_coords(y).dim())
        return std::nullopt;

    for (const Label& r : x1)
        for (const Label& c : phi.c())
            if (phi.a1().entry(r, c) != 0) return std::nullopt;

    Mat b1 = phi.a1().rows_submatrix(x1);
    if (rank(b1) != static_cast<int>(x1.size())) return std::nullopt;
    if (!Subspace::from_rows(b1).is_skew(phi.delta())) return std::nullopt;
    return std::make_pair(x0, x1);
}

inline bool is_reduced(const FrameTemplate& phi) { return reduced_partition(phi).has_value(); }

namespace detail {

// Nonsingular U with U*Lambda spanned by units on Lambda's pivot rows.
inline Mat lambda_normalizing_unitary(const FrameTemplate& phi) {
    const Mat& b = phi.lambda().basis();
    const std::vector<size_t>& piv = phi.lambda().pivots();
    const std::vector<Label>& x = phi.x();
    Mat v(phi.field(), x, x);
    std::vector<bool> taken(x.size(), false);
    for (size_t i = 0; i < piv.size(); ++i) {
        taken[piv[i]] = true;
        for (size_t r = 0; r < x.size(); ++r) v.set(r, piv[i], b.at(i, r));
    }
    for (size_t j = 0; j < x.size(); ++j)
        if (!taken[j]) v.set(j, j, 1);
    return inverse(v);
}

}  // namespace detail

// Rewrite the template into reduced form, recording every rewrite. Each pass
// preserves the class of conforming matroids.
inline std::pair<FrameTemplate, ReductionTrace> reduce(const FrameTemplate& phi0) {
    ReductionTrace trace;
    FrameTemplate cur = phi0;
    auto record = [&](const std::string& name, const std::string& evidence, FrameTemplate next) {
        trace.push_back({name, evidence, cur, next});
        cur = std::move(next);
    };

    if (is_reduced(cur)) return {cur, trace};
    const PrimeField& f = cur.field();

    // Coordinatize Delta unless it already sits on C-coordinates.
    {
        auto dsup = cur.delta().coordinate_support();
        std::set<Label> cset(cur.c().begin(), cur.c().end());
        const bool on_c = dsup && std::all_of(dsup->begin(), dsup->end(), [&](const Label& l) {
                              return cset.count(l) > 0;
                          });
        if (cur.delta().dim() > 0 && !on_c)
            record("coordinatize-delta",
                   "added " + std::to_string(cur.delta().dim()) + " pivot column(s)",
                   normalize_delta(cur));
    }

    // Contract the C-columns outside the Delta support.
    {
        auto dsup = cur.delta().coordinate_support();
        if (!dsup) throw std::logic_error("reduce: Delta should be coordinatized");
        std::set<Label> s(dsup->begin(), dsup->end());
        std::vector<Label> c1;
        for (const Label& l : cur.c())
            if (!s.count(l)) c1.push_back(l);
        if (!c1.empty()) {
            if (!cur.x().empty()) {
                Mat aug = cur.a1().cols_submatrix(c1).hstack(Mat::identity(f, cur.x()));
                Mat u = rref(aug).mat.cols_submatrix(cur.x());
                record("echelon-unsupported-columns", detail::join_labels(c1),
                       apply_unitary(cur, u));
            }
            std::vector<Label> xc;
            for (const Label& r : cur.x()) {
                bool nz = false;
                for (const Label& c : c1)
                    if (cur.a1().entry(r, c) != 0) { nz = true; break; }
                if (nz) xc.push_back(r);
            }
            record("contract-unsupported-columns",
                   "rows " + detail::join_labels(xc) + " columns " + detail::join_labels(c1),
                   contract_template(cur, xc, c1));
        }
    }

    // Coordinatize Lambda.
    if (!cur.lambda().coordinate_support())
        record("coordinatize-lambda", "dim " + std::to_string(cur.lambda().dim()),
               apply_unitary(cur, detail::lambda_normalizing_unitary(cur)));

    if (!is_y_reduced(cur)) throw std::logic_error("reduce: intermediate form is not Y-reduced");

    std::vector<Label> x0 = *cur.lambda().coordinate_support();
    std::sort(x0.begin(), x0.end());
    std::vector<Label> x1 = labels_minus(cur.x(), x0);

    // Echelon the (X1, C) block without touching X0 rows, then clear the X0
    // entries above its pivots.
    std::vector<Label> xpiv, cpiv;
    {
        bool nonzero = false;
        for (const Label& r : x1)
            for (const Label& c : cur.c())
                if (cur.a1().entry(r, c) != 0) { nonzero = true; break; }
        if (nonzero) {
            Mat aug = cur.a1().submatrix(x1, cur.c()).hstack(Mat::identity(f, x1));
            RrefResult rr = rref(aug);
            Mat t = rr.mat.cols_submatrix(x1);
            Mat ua = Mat::identity(f, cur.x());
            for (size_t i = 0; i < x1.size(); ++i)
                for (size_t j = 0; j < x1.size(); ++j)
                    ua.set_entry(x1[i], x1[j], t.at(i, j));
            record("echelon-dependent-rows", detail::join_labels(x1), apply_unitary(cur, ua));

            size_t k = 0;
            for (size_t c : rr.pivot_cols)
                if (c < cur.c().size()) ++k;
            for (size_t i = 0; i < k; ++i) xpiv.push_back(x1[i]);
            for (size_t i = 0; i < k; ++i) cpiv.push_back(cur.c()[rr.pivot_cols[i]]);

            bool upper = false;
            for (const Label& r : x0)
                for (const Label& c : cpiv)
                    if (cur.a1().entry(r, c) != 0) { upper = true; break; }
            if (upper) {
                Mat ub = Mat::identity(f, cur.x());
                for (const Label& r : x0)
                    for (size_t j = 0; j < cpiv.size(); ++j)
                        ub.set_entry(r, xpiv[j], f.neg(cur.a1().entry(r, cpiv[j])));
                record("clear-pivot-entries", detail::join_labels(cpiv), apply_unitary(cur, ub));
            }
        }
    }

    // Project Delta off the X1 row space where necessary.
    if (!x1.empty()) {
        Subspace w = Subspace::from_rows(cur.a1().rows_submatrix(x1));
        bool need = false;
        if (w.dim() > 0 && cur.delta().dim() > 0) {
            need = !w.is_skew(cur.delta());
            if (!need && !cpiv.empty()) need = cur.delta().project_coords(cpiv).dim() != 0;
        }
        if (need)
            record("project-delta", "along rows " + detail::join_labels(x1),
                   project_delta(cur, x1));
    }

    // Contract the pivot block.
    if (!cpiv.empty())
        record("contract-pivot-block",
               "rows " + detail::join_labels(xpiv) + " columns " + detail::join_labels(cpiv),
               contract_template(cur, xpiv, cpiv));

    // Drop dependent X1 rows.
    {
        std::vector<Label> x1c = labels_minus(cur.x(), x0);
        Mat m1 = cur.a1().rows_submatrix(x1c);
        if (rank(m1) < static_cast<int>(x1c.size())) {
            IncrementalBasis ib(f, m1.ncols());
            std::vector<Label> drop;
            for (const Label& r : x1c)
                if (!ib.insert(cur.a1().row_vector(r))) drop.push_back(r);
            std::vector<Label> keep = labels_minus(cur.x(), drop);
            record("drop-dependent-rows", detail::join_labels(drop),
                   FrameTemplate(cur.gamma(), cur.c(), keep, cur.y0(), cur.y1(),
                                 cur.a1().rows_submatrix(keep), cur.delta(),
                                 cur.lambda().project_coords(keep)));
        }
    }

    if (!is_reduced(cur)) throw std::logic_error("reduce: pipeline did not reach reduced form");
    return {cur, trace};
}

}  // namespace framelab

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "framelab/certificates.hpp"
#include "framelab/frames.hpp"
#include "framelab/isomorphism.hpp"
#include "framelab/rmatroid.hpp"
#include "framelab/template_reduce.hpp"
#include "framelab/templates.hpp"

namespace framelab {

struct EnumerateOptions {
    long long budget = 4000000;
};

namespace detail {

// One way to fill an extra column over k rows below X: either an exact frame
// column with a top part from Lambda, or a shift-eligible unit column with a
// chosen Y1 column added in. Distinct choices yield projectively distinct
// columns; orientations and scalings absorbed by represented-matroid
// equality are not repeated.
struct ColumnChoice {
    std::vector<uint8_t> top;   // over X, canonical order
    std::vector<uint8_t> rest;  // over the k rows below X
    bool shifted = false;
    Label shift_target;         // Y1 column added in when shifted
};

inline bool scaling_representative(const std::vector<uint8_t>& v) {
    for (uint8_t x : v) {
        if (x == 0) continue;
        return x == 1;
    }
    return true;
}

inline std::vector<ColumnChoice> column_choices(const FrameTemplate& phi, int k) {
    const PrimeField& f = phi.field();
    const std::vector<std::vector<uint8_t>> tops = phi.lambda().enumerate();
    std::vector<ColumnChoice> out;

    // Zero rest: the whole column scales freely, so keep one top per ray.
    for (const auto& t : tops) {
        if (!scaling_representative(t)) continue;
        ColumnChoice c;
        c.top = t;
        c.rest.assign(k, 0);
        out.push_back(std::move(c));
    }
    // Unit rest: the unit entry pins the scale, every top is distinct.
    for (int i = 0; i < k; ++i)
        for (const auto& t : tops) {
            ColumnChoice c;
            c.top = t;
            c.rest.assign(k, 0);
            c.rest[i] = 1;
            out.push_back(std::move(c));
        }
    // Two-entry rest: -1 at the lower row, gamma at the higher; the flipped
    // orientation is a scaling of one of these.
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int g : phi.gamma().elements())
                for (const auto& t : tops) {
                    ColumnChoice c;
                    c.top = t;
                    c.rest.assign(k, 0);
                    c.rest[i] = static_cast<uint8_t>(f.neg(1));
                    c.rest[j] = static_cast<uint8_t>(g);
                    out.push_back(std::move(c));
                }
    // Shifted columns: unit rest, zero top, one Y1 column added in.
    for (int i = 0; i < k; ++i)
        for (const Label& y : phi.y1()) {
            ColumnChoice c;
            c.top.assign(phi.x().size(), 0);
            c.rest.assign(k, 0);
            c.rest[i] = 1;
            c.shifted = true;
            c.shift_target = y;
            out.push_back(std::move(c));
        }
    return out;
}

inline long long checked_add(long long a, long long b) {
    if (a > std::numeric_limits<long long>::max() - b) return std::numeric_limits<long long>::max();
    return a + b;
}

// C(n + m - 1, m), saturating.
inline long long multiset_count(long long n, int m) {
    __int128 v = 1;
    for (int i = 1; i <= m; ++i) {
        v = v * (n + m - i) / i;
        if (v > std::numeric_limits<long long>::max()) return std::numeric_limits<long long>::max();
    }
    return static_cast<long long>(v);
}

// Invariants cheap enough to compute on every deduplication candidate.
struct MatroidFingerprint {
    size_t size = 0;
    int rnk = 0;
    long long eps = 0;
    std::vector<int> class_sizes;

    bool operator<(const MatroidFingerprint& o) const {
        return std::tie(size, rnk, eps, class_sizes) <
               std::tie(o.size, o.rnk, o.eps, o.class_sizes);
    }
};

inline MatroidFingerprint fingerprint(const RepresentedMatroid& m) {
    MatroidFingerprint fp;
    fp.size = m.size();
    fp.rnk = m.rank();
    SimplifyResult s = simplify(m);
    fp.eps = s.epsilon;
    std::map<Label, int> counts;
    for (const auto& [e, r] : s.class_rep) counts[r]++;
    for (const auto& [r, n] : counts) fp.class_sizes.push_back(n);
    std::sort(fp.class_sizes.begin(), fp.class_sizes.end());
    return fp;
}

// Exact textual key: canonical form with every column scaled to leading
// entry one. Collapses row-space-equal candidates; distinct keys may still
// be isomorphic, which the bucket stage resolves.
inline std::string scaled_key(const RepresentedMatroid& m) {
    Mat r = m.rep();
    for (size_t j = 0; j < r.ncols(); ++j) {
        for (size_t i = 0; i < r.nrows(); ++i) {
            if (r.at(i, j) != 0) {
                r.scale_col(j, r.field().inv(r.at(i, j)));
                break;
            }
        }
    }
    return r.to_string();
}

}  // namespace detail

// Exact number of candidate matrices the enumeration below will visit.
inline long long conforming_enumeration_cost(const FrameTemplate& phi, int max_ground,
                                             int max_rows) {
    const int m_max = max_ground - static_cast<int>(phi.y0().size());
    if (m_max < 0) return 0;
    long long total = 0;
    long long delta_count = 1;
    for (int i = 0; i < phi.delta().dim(); ++i) delta_count *= phi.field().p();
    for (int k = 0; k <= max_rows; ++k) {
        const long long rows = detail::multiset_count(delta_count, k);
        const long long nchoices =
            static_cast<long long>(detail::column_choices(phi, k).size());
        long long cols = 0;
        for (int m = 0; m <= m_max; ++m)
            cols = detail::checked_add(cols, detail::multiset_count(nchoices, m));
        if (rows > 0 && cols > std::numeric_limits<long long>::max() / rows)
            return std::numeric_limits<long long>::max();
        total = detail::checked_add(total, rows * cols);
    }
    return total;
}

// All matroids conforming to the template whose ground set (after the C
// contraction and Y1 deletion) has at most max_ground elements, built from
// respecting matrices with at most max_rows rows below X, deduplicated up
// to represented isomorphism and sorted canonically. Bottom rows are taken
// in nondecreasing Delta order and two-entry columns in one orientation;
// every omitted matrix is a row permutation or column scaling of a visited
// one.
inline std::vector<RepresentedMatroid> enumerate_conforming(const FrameTemplate& phi,
                                                            int max_ground, int max_rows,
                                                            const EnumerateOptions& opts = {}) {
    if (max_ground < 0 || max_ground > 8)
        throw std::invalid_argument("enumerate_conforming: ground bound must be between 0 and 8");
    if (max_rows < 0) throw std::invalid_argument("enumerate_conforming: row bound is negative");

    const PrimeField& f = phi.field();
    const std::vector<Label> cy = phi.cy_labels();
    const int m_max = max_ground - static_cast<int>(phi.y0().size());

    std::vector<RepresentedMatroid> classes;
    std::set<std::string> seen_keys;
    std::map<detail::MatroidFingerprint, std::vector<size_t>> buckets;
    long long nodes = 0;

    std::vector<std::vector<uint8_t>> dvecs = phi.delta().enumerate();

    for (int k = 0; k <= max_rows && m_max >= 0; ++k) {
        std::vector<Label> rows = phi.x();
        std::vector<Label> brow;
        for (int i = 0; i < k; ++i) brow.push_back("b" + std::to_string(i + 1));
        rows.insert(rows.end(), brow.begin(), brow.end());

        const std::vector<detail::ColumnChoice> choices = detail::column_choices(phi, k);

        // Base matrix on the template columns for one Delta assignment.
        Mat base(f, rows, cy);
        for (const Label& r : phi.x())
            for (const Label& c : cy) base.set_entry(r, c, phi.a1().entry(r, c));

        std::vector<size_t> dpick(k, 0);
        while (true) {
            for (int i = 0; i < k; ++i)
                for (size_t j = 0; j < cy.size(); ++j)
                    base.set_entry(brow[i], cy[j], dvecs[dpick[i]][j]);

            // Column multiset DFS, nondecreasing choice index.
            std::vector<size_t> picked;
            auto emit = [&]() {
                if (++nodes > opts.budget)
                    throw BudgetExceeded("enumerate_conforming: candidate budget exceeded");

                std::vector<Label> ecol;
                for (size_t i = 0; i < picked.size(); ++i)
                    ecol.push_back("e" + std::to_string(i + 1));
                std::vector<Label> cols = cy;
                cols.insert(cols.end(), ecol.begin(), ecol.end());
                Mat a(f, rows, cols);
                for (const Label& r : rows)
                    for (const Label& c : cy) a.set_entry(r, c, base.entry(r, c));
                for (size_t i = 0; i < picked.size(); ++i) {
                    const detail::ColumnChoice& ch = choices[picked[i]];
                    for (size_t xr = 0; xr < phi.x().size(); ++xr)
                        a.set_entry(phi.x()[xr], ecol[i], ch.top[xr]);
                    for (int br = 0; br < k; ++br)
                        a.set_entry(brow[br], ecol[i], ch.rest[br]);
                    if (ch.shifted) {
                        const size_t jc = a.col_index(ecol[i]);
                        const size_t jy = a.col_index(ch.shift_target);
                        for (size_t rr = 0; rr < a.nrows(); ++rr)
                            a.set(rr, jc, f.add(a.at(rr, jc), a.at(rr, jy)));
                    }
                }

                // A row supported nowhere duplicates the k-1 layer.
                for (const Label& r : brow) {
                    bool zero = true;
                    for (size_t j = 0; j < a.ncols() && zero; ++j)
                        if (a.at(a.row_index(r), j) != 0) zero = false;
                    if (zero) return;
                }

                RepresentedMatroid m(a);
                m = contract_elements_fast(m, phi.c());
                m = delete_elements(m, phi.y1());

                std::string key = detail::scaled_key(m);
                if (!seen_keys.insert(key).second) return;
                detail::MatroidFingerprint fp = detail::fingerprint(m);
                for (size_t idx : buckets[fp])
                    if (is_isomorphic(classes[idx], m, IsoMode::Represented)) return;
                buckets[fp].push_back(classes.size());
                classes.push_back(std::move(m));
            };
            std::function<void(size_t)> dfs = [&](size_t lo) {
                emit();
                if (static_cast<int>(picked.size()) == m_max) return;
                for (size_t c = lo; c < choices.size(); ++c) {
                    picked.push_back(c);
                    dfs(c);
                    picked.pop_back();
                }
            };
            dfs(0);

            // Next nondecreasing Delta assignment.
            int pos = k - 1;
            while (pos >= 0 && dpick[pos] == dvecs.size() - 1) --pos;
            if (pos < 0) break;
            ++dpick[pos];
            for (int i = pos + 1; i < k; ++i) dpick[i] = dpick[pos];
        }
    }

    std::sort(classes.begin(), classes.end(),
              [](const RepresentedMatroid& a, const RepresentedMatroid& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  if (a.rank() != b.rank()) return a.rank() < b.rank();
                  return detail::scaled_key(a) < detail::scaled_key(b);
              });
    return classes;
}

// Two enumerations agree up to represented isomorphism.
inline bool same_conforming_sets(const std::vector<RepresentedMatroid>& a,
                                 const std::vector<RepresentedMatroid>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& ma : a) {
        bool found = false;
        for (size_t j = 0; j < b.size() && !found; ++j) {
            if (used[j] || ma.size() != b[j].size() || ma.rank() != b[j].rank()) continue;
            if (is_isomorphic(ma, b[j], IsoMode::Represented)) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

struct DensityCheck {
    long long bound = 0;
    long long eps = 0;
    bool holds = false;
};

namespace detail {
inline long long saturating_pow(long long base, int e) {
    __int128 v = 1;
    for (int i = 0; i < e; ++i) {
        v *= base;
        if (v > std::numeric_limits<long long>::max()) return std::numeric_limits<long long>::max();
    }
    return static_cast<long long>(v);
}
}  // namespace detail

// Quadratic point-count bound for matroids conforming to a reduced
// template: f_{p,|Gamma|,t}(r) + p^{t+1} c (r + c) with t = dim(Lambda).
// Below rank t the projective bound applies instead.
inline DensityCheck density_bound_primal(const FrameTemplate& phi, const RepresentedMatroid& m) {
    DensityCheck out;
    const int p = phi.field().p();
    const int t = phi.lambda().dim();
    const long long c = phi.complexity();
    const long long r = m.rank();
    if (r >= t) {
        const long long fval = extremal_f(p, phi.gamma().size(), t, r);
        out.bound = detail::checked_add(
            fval, detail::saturating_pow(p, t + 1) * c * (r + c));
    } else {
        out.bound = projective_points(p, static_cast<int>(r));
    }
    out.eps = epsilon(m);
    out.holds = out.eps <= out.bound;
    return out;
}

// Linear bound for duals of conforming matroids: p^c (3r + 6c + 1).
inline DensityCheck density_bound_dual(const FrameTemplate& phi, const RepresentedMatroid& m) {
    DensityCheck out;
    const long long c = phi.complexity();
    const long long r = m.rank();
    out.bound = detail::saturating_pow(phi.field().p(), static_cast<int>(c)) * (3 * r + 6 * c + 1);
    out.eps = epsilon(m);
    out.holds = out.eps <= out.bound;
    return out;
}

// Data for a matroid given as a frame matrix extended by extra rows (P2 on
// top of P0) and projection rows P1: [P1; P0] must be a frame matrix up to
// column scaling. The witness target is M([P2; P0]).
struct SubclassInput {
    Mat p2;
    Mat p1;
    Mat p0;
};

struct SubclassWitness {
    Mat host;
    ShiftMatrix shift;
    RepresentedMatroid conforming;
    RepresentedMatroid pattern;
    MinorCertificate cert;
};

// Build a matroid conforming to the reduced template phi that contains
// M([P2; P0]) as a minor, with a replayable certificate: the template
// columns C|Y and a pivot block are consumed by contraction, leaving the
// frame block with dim(Lambda) extra rows and dim(Delta) projection rows.
inline SubclassWitness subclass_witness(const FrameTemplate& phi, const SubclassInput& input) {
    const PrimeField& f = phi.field();
    auto part = reduced_partition(phi);
    if (!part) throw std::invalid_argument("subclass_witness: template is not reduced");
    const std::vector<Label>& x0 = part->first;
    const std::vector<Label>& x1 = part->second;
    const int d = phi.delta().dim();

    if (input.p2.field() != f || input.p1.field() != f || input.p0.field() != f)
        throw std::invalid_argument("subclass_witness: field mismatch");
    if (input.p2.nrows() != x0.size())
        throw std::invalid_argument("subclass_witness: top block must have dim(Lambda) rows");
    if (static_cast<int>(input.p1.nrows()) != d)
        throw std::invalid_argument("subclass_witness: projection block must have dim(Delta) rows");
    const std::vector<Label>& fcols = input.p0.col_labels();
    if (input.p1.col_labels() != fcols || input.p2.col_labels() != fcols)
        throw std::invalid_argument("subclass_witness: blocks must share column labels");

    // Rescale so the frame part is exact; remember how to undo per column.
    Mat p1 = input.p1, p0 = input.p0, p2 = input.p2;
    ColScaling undo;
    {
        Mat stacked = p1.nrows() > 0 ? p1.vstack(p0) : p0;
        auto w = is_frame_matrix_up_to_scaling(stacked, phi.gamma());
        if (!w)
            throw std::invalid_argument(
                "subclass_witness: [P1; P0] is not a frame matrix up to column scaling");
        for (const auto& [lbl, s] : *w) {
            if (p1.nrows() > 0) p1.scale_col(p1.col_index(lbl), s);
            p0.scale_col(p0.col_index(lbl), s);
            p2.scale_col(p2.col_index(lbl), s);
            undo[lbl] = f.inv(s);
        }
    }

    // Fresh labels for the projection rows, the frame rows, the pivot-copy
    // columns and the {column, row} pair that carries them.
    std::set<Label> used;
    for (const auto* b : {&phi.c(), &phi.x(), &phi.y0(), &phi.y1()}) used.insert(b->begin(), b->end());
    for (const Label& l : fcols)
        if (!used.insert(l).second)
            throw std::invalid_argument("subclass_witness: frame column label collides with the template");
    auto fresh = [&used](const std::string& stem, int count) {
        std::vector<Label> out;
        for (int k = 1; static_cast<int>(out.size()) < count; ++k) {
            Label l = stem + std::to_string(k);
            if (used.insert(l).second) out.push_back(l);
        }
        return out;
    };
    std::vector<Label> rrows = fresh("r#", d);
    std::vector<Label> brows = fresh("b#", static_cast<int>(input.p0.nrows()));
    p1.relabel_rows(rrows);
    p0.relabel_rows(brows);
    p2.relabel_rows(x0);

    const std::vector<Label> cy = phi.cy_labels();
    Mat w = phi.delta().basis();
    std::optional<Mat> wmat;
    if (d > 0) {
        w.relabel_rows(rrows);
        wmat = w;
    }

    // Pivot columns of the stacked [A1[X1]; W]: nonsingular Q, C inside.
    Mat stack = phi.a1().rows_submatrix(x1);
    if (d > 0) stack = stack.nrows() > 0 ? stack.vstack(*wmat) : *wmat;
    RrefResult srr = rref(stack);
    if (srr.rank != static_cast<int>(stack.nrows()))
        throw std::logic_error("subclass_witness: pivot stack must have independent rows");
    std::vector<Label> chat;
    for (size_t c : srr.pivot_cols) chat.push_back(cy[c]);

    // P2' = P2 + A1[X0, chat] Q^{-1} [0; P1].
    if (!x0.empty() && !chat.empty()) {
        Mat q = stack.cols_submatrix(chat);
        Mat rhs(f, stack.row_labels(), fcols);
        for (size_t i = 0; i < rrows.size(); ++i)
            for (size_t j = 0; j < fcols.size(); ++j)
                rhs.set_entry(rrows[i], fcols[j], p1.at(i, j));
        Mat n = inverse(q).mul(rhs);
        Mat corr = phi.a1().rows_submatrix(x0).cols_submatrix(chat).mul(n);
        for (size_t i = 0; i < x0.size(); ++i)
            for (size_t j = 0; j < fcols.size(); ++j)
                p2.set(i, j, f.add(p2.at(i, j), corr.entry(x0[i], fcols[j])));
    }

    std::set<Label> y0set(phi.y0().begin(), phi.y0().end());
    std::set<Label> y1set(phi.y1().begin(), phi.y1().end());
    std::vector<Label> c0, c1;
    for (const Label& l : chat) {
        if (y0set.count(l)) c0.push_back(l);
        if (y1set.count(l)) c1.push_back(l);
    }
    std::vector<Label> zcols = fresh("z#", static_cast<int>(c1.size()));
    const Label ccol = fresh("q#", 1)[0];
    const Label drow = fresh("d#", 1)[0];

    // Assemble the host matrix.
    std::vector<Label> rows = phi.x();
    rows.insert(rows.end(), rrows.begin(), rrows.end());
    rows.insert(rows.end(), brows.begin(), brows.end());
    rows.push_back(drow);
    std::vector<Label> cols = fcols;
    cols.push_back(ccol);
    cols.insert(cols.end(), zcols.begin(), zcols.end());
    cols.insert(cols.end(), cy.begin(), cy.end());

    Mat a(f, rows, cols);
    for (size_t i = 0; i < x0.size(); ++i)
        for (size_t j = 0; j < fcols.size(); ++j) a.set_entry(x0[i], fcols[j], p2.at(i, j));
    for (const Label& r : phi.x())
        for (const Label& c : cy) a.set_entry(r, c, phi.a1().entry(r, c));
    for (size_t i = 0; i < rrows.size(); ++i) {
        for (size_t j = 0; j < fcols.size(); ++j) a.set_entry(rrows[i], fcols[j], p1.at(i, j));
        for (size_t j = 0; j < cy.size(); ++j) a.set_entry(rrows[i], cy[j], wmat->at(i, j));
    }
    for (size_t i = 0; i < brows.size(); ++i)
        for (size_t j = 0; j < fcols.size(); ++j) a.set_entry(brows[i], fcols[j], p0.at(i, j));
    a.set_entry(drow, ccol, 1);
    for (const Label& z : zcols) a.set_entry(drow, z, 1);

    ShiftMatrix s;
    s.ground = cols;
    for (size_t i = 0; i < zcols.size(); ++i) s.assignment[zcols[i]] = c1[i];

    SubclassWitness out{a, s, conforming_matroid(a, s, phi),
                        RepresentedMatroid(input.p2.nrows() > 0 ? input.p2.vstack(input.p0)
                                                                : input.p0),
                        MinorCertificate{}};

    out.cert.contracted.push_back(ccol);
    out.cert.contracted.insert(out.cert.contracted.end(), zcols.begin(), zcols.end());
    out.cert.contracted.insert(out.cert.contracted.end(), c0.begin(), c0.end());
    out.cert.deleted = labels_minus(phi.y0(), c0);
    for (const Label& l : fcols) out.cert.map[l] = l;
    out.cert.scalings = undo;
    out.cert.mode = IsoMode::Represented;

    if (!replay_minor(out.conforming, out.pattern, out.cert))
        throw std::logic_error("subclass_witness: certificate replay failed");
    return out;
}

}  // namespace framelab

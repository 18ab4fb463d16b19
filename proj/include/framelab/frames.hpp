#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"
#include "mat.hpp"
#include "rmatroid.hpp"

namespace framelab {

// Describes the class of matroids representable by a matrix with at most t
// dense rows stacked on a Gamma-frame matrix.
struct FrameClassParams {
    PrimeField f;
    SubgroupGamma gamma;
    int t = 0;

    FrameClassParams(PrimeField field, SubgroupGamma g, int t_) : f(field), gamma(std::move(g)), t(t_) {
        if (gamma.p() != f.p()) throw std::invalid_argument("FrameClassParams: field mismatch");
        if (t < 0) throw std::invalid_argument("FrameClassParams: t must be nonnegative");
    }
};

// Extremal size of a simple rank-n member: p^t (g*C(n-t,2) + (n-t)) + (p^t-1)/(p-1).
inline long long extremal_f(int p, long long g, int t, long long n) {
    if (!is_supported_prime(p)) throw std::invalid_argument("extremal_f: unsupported prime");
    if (g < 1) throw std::invalid_argument("extremal_f: group order must be positive");
    if (t < 0) throw std::invalid_argument("extremal_f: t must be nonnegative");
    if (n < t) throw std::domain_error("extremal_f: rank below t");
    __int128 pt = 1;
    for (int i = 0; i < t; ++i) {
        pt *= p;
        if (pt > std::numeric_limits<long long>::max()) throw std::overflow_error("extremal_f: overflow");
    }
    const __int128 m = n - t;
    const __int128 value = pt * (static_cast<__int128>(g) * (m * (m - 1) / 2) + m) + (pt - 1) / (p - 1);
    if (value > std::numeric_limits<long long>::max()) throw std::overflow_error("extremal_f: overflow");
    return static_cast<long long>(value);
}

inline long long projective_points(int p, int rank) {
    long long total = 0, power = 1;
    for (int i = 0; i < rank; ++i) {
        total += power;
        power *= p;
    }
    return total;
}

namespace detail {

inline std::string vec_suffix(const std::vector<uint8_t>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(static_cast<int>(v[i]));
    }
    return s;
}

// All vectors of F^t in lexicographic order, most significant coordinate first.
inline std::vector<std::vector<uint8_t>> all_vectors(int p, int t) {
    std::vector<std::vector<uint8_t>> out;
    std::vector<uint8_t> v(static_cast<size_t>(t), 0);
    while (true) {
        out.push_back(v);
        int i = t - 1;
        while (i >= 0 && v[static_cast<size_t>(i)] == p - 1) v[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++v[static_cast<size_t>(i)];
    }
    return out;
}

struct LabeledColumn {
    Label label;
    std::vector<uint8_t> vec;
};

inline Mat assemble_columns(const PrimeField& f, const std::vector<Label>& row_labels,
                            std::vector<LabeledColumn> cols) {
    std::sort(cols.begin(), cols.end(),
              [](const LabeledColumn& a, const LabeledColumn& b) { return a.label < b.label; });
    std::vector<Label> col_labels;
    col_labels.reserve(cols.size());
    for (const auto& c : cols) col_labels.push_back(c.label);
    Mat m(f, row_labels, col_labels);
    for (size_t j = 0; j < cols.size(); ++j) {
        for (size_t i = 0; i < row_labels.size(); ++i) m.set(i, j, cols[j].vec[i]);
    }
    return m;
}

}  // namespace detail

// The canonical rank-n Gamma-frame column set: unit columns b_i plus
// g{gamma}:{i},{j} columns equal to -e_i + gamma e_j for i < j.
inline Mat build_W(const PrimeField& f, const SubgroupGamma& gamma, int n) {
    if (gamma.p() != f.p()) throw std::invalid_argument("build_W: field mismatch");
    if (n < 0) throw std::invalid_argument("build_W: negative rank");
    std::vector<Label> rows;
    for (int i = 1; i <= n; ++i) rows.push_back("b" + std::to_string(i));
    std::vector<detail::LabeledColumn> cols;
    for (int i = 1; i <= n; ++i) {
        std::vector<uint8_t> v(static_cast<size_t>(n), 0);
        v[static_cast<size_t>(i - 1)] = 1;
        cols.push_back({"b" + std::to_string(i), std::move(v)});
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (int g : gamma.elements()) {
                std::vector<uint8_t> v(static_cast<size_t>(n), 0);
                v[static_cast<size_t>(i - 1)] = f.neg(1);
                v[static_cast<size_t>(j - 1)] = static_cast<uint8_t>(g);
                cols.push_back({"g" + std::to_string(g) + ":" + std::to_string(i) + "," + std::to_string(j),
                                std::move(v)});
            }
        }
    }
    return detail::assemble_columns(f, rows, std::move(cols));
}

// Standard representation of DG(n,Gamma)^t: every (v,w) with v in F^X and w in
// the rank-(n-t) frame column set, plus one column (u,0) per projective class
// of nonzero u in F^X. Rows are x1..xt then b1..b{n-t}; columns are sorted by
// label.
inline Mat build_Wt(int n, const FrameClassParams& params) {
    const int t = params.t;
    if (n < t) throw std::invalid_argument("build_Wt: rank below t");
    const PrimeField& f = params.f;
    const int p = f.p();
    const int base_n = n - t;

    std::vector<Label> rows;
    for (int i = 1; i <= t; ++i) rows.push_back("x" + std::to_string(i));
    for (int i = 1; i <= base_n; ++i) rows.push_back("b" + std::to_string(i));

    Mat w = build_W(f, params.gamma, base_n);
    std::vector<detail::LabeledColumn> cols;
    const auto tvecs = detail::all_vectors(p, t);
    for (size_t j = 0; j < w.ncols(); ++j) {
        const Label& base = w.col_labels()[j];
        std::vector<uint8_t> lower(static_cast<size_t>(base_n));
        for (int i = 0; i < base_n; ++i) lower[static_cast<size_t>(i)] = w.at(static_cast<size_t>(i), j);
        if (t == 0) {
            cols.push_back({base, lower});
            continue;
        }
        for (const auto& v : tvecs) {
            std::vector<uint8_t> full = v;
            full.insert(full.end(), lower.begin(), lower.end());
            cols.push_back({base + "|" + detail::vec_suffix(v), std::move(full)});
        }
    }
    for (const auto& v : tvecs) {
        size_t lead = 0;
        while (lead < v.size() && v[lead] == 0) ++lead;
        if (lead == v.size() || v[lead] != 1) continue;  // one column per projective class
        std::vector<uint8_t> full = v;
        full.resize(static_cast<size_t>(n), 0);
        cols.push_back({"u" + detail::vec_suffix(v), std::move(full)});
    }
    return detail::assemble_columns(f, rows, std::move(cols));
}

enum class DowlingVariant { Plain, XExtension, Box };

struct DowlingSpec {
    FrameClassParams params;
    int n;
    DowlingVariant variant = DowlingVariant::Plain;
    int x = 0;  // the non-Gamma scalar of an XExtension
};

// Standard matrix of the Dowling geometry (optionally with one extra column
// labeled "e": either -e_{b1} + x e_{b2} for x outside Gamma, or the all-ones
// box column e_{b1}+e_{b2}+e_{b3}).
inline Mat dowling_matrix(const DowlingSpec& spec) {
    const PrimeField& f = spec.params.f;
    const int t = spec.params.t;
    Mat m = build_Wt(spec.n, spec.params);
    if (spec.variant == DowlingVariant::Plain) return m;

    const int base_n = spec.n - t;
    std::vector<uint8_t> w(static_cast<size_t>(spec.n), 0);
    if (spec.variant == DowlingVariant::XExtension) {
        if (base_n < 2) throw std::invalid_argument("dowling: x-extension needs two frame rows");
        const int x = f.normalize(spec.x);
        if (x == 0 || spec.params.gamma.contains(x))
            throw std::invalid_argument("dowling: x must lie outside Gamma");
        w[static_cast<size_t>(t)] = f.neg(1);
        w[static_cast<size_t>(t + 1)] = static_cast<uint8_t>(x);
    } else {
        if (base_n < 3) throw std::invalid_argument("dowling: box extension needs three frame rows");
        w[static_cast<size_t>(t)] = 1;
        w[static_cast<size_t>(t + 1)] = 1;
        w[static_cast<size_t>(t + 2)] = 1;
    }
    Mat e(f, m.row_labels(), {"e"});
    for (size_t i = 0; i < w.size(); ++i) e.set(i, 0, w[i]);
    return m.hstack(e);
}

inline RepresentedMatroid dowling(const DowlingSpec& spec) {
    return RepresentedMatroid(dowling_matrix(spec));
}

// If every column of m can be rescaled into exact Gamma-frame shape (zero,
// unit, or gamma e_j - e_i), returns those scalings keyed by column label.
inline std::optional<ColScaling> is_frame_matrix_up_to_scaling(const Mat& m, const SubgroupGamma& gamma) {
    const PrimeField& f = m.field();
    if (gamma.p() != f.p()) throw std::invalid_argument("is_frame_matrix_up_to_scaling: field mismatch");
    ColScaling scalings;
    for (size_t j = 0; j < m.ncols(); ++j) {
        std::vector<size_t> support;
        for (size_t i = 0; i < m.nrows(); ++i) {
            if (m.at(i, j) != 0) support.push_back(i);
        }
        int d = 1;
        if (support.size() == 1) {
            d = f.inv(m.at(support[0], j));
        } else if (support.size() == 2) {
            const int alpha = m.at(support[0], j);
            const int beta = m.at(support[1], j);
            if (!gamma.contains(f.neg(f.div(beta, alpha)))) return std::nullopt;
            d = f.neg(f.inv(alpha));
        } else if (support.size() > 2) {
            return std::nullopt;
        }
        scalings[m.col_labels()[j]] = d;
    }
    return scalings;
}

// Exact-form check used by the template machinery: no rescaling slack.
inline bool is_exact_frame_column(const PrimeField& f, const SubgroupGamma& gamma,
                                  const std::vector<uint8_t>& v) {
    std::vector<size_t> support;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) support.push_back(i);
    }
    if (support.empty()) return true;
    if (support.size() == 1) return v[support[0]] == 1;
    if (support.size() != 2) return false;
    const int a = v[support[0]], b = v[support[1]];
    const int minus_one = f.neg(1);
    return (a == minus_one && gamma.contains(b)) || (b == minus_one && gamma.contains(a));
}

inline bool is_exact_frame_matrix(const Mat& m, const SubgroupGamma& gamma) {
    for (size_t j = 0; j < m.ncols(); ++j) {
        if (!is_exact_frame_column(m.field(), gamma, m.col_vector(m.col_labels()[j]))) return false;
    }
    return true;
}

// A representation split into a dense top block and a frame bottom block,
// sharing one column label set.
struct FrameStacked {
    Mat p;
    Mat q;
};

inline RepresentedMatroid stacked_matroid(const FrameStacked& fs) {
    if (fs.p.nrows() == 0) return RepresentedMatroid(fs.q);
    return RepresentedMatroid(fs.p.vstack(fs.q));
}

enum class MinorOp { Delete, Contract };

// Single delete/contract step that keeps the dense-over-frame shape, so the
// result witnesses membership of the minor in the same class.
inline FrameStacked frame_minor_step(const FrameStacked& input, const SubgroupGamma& gamma,
                                     const Label& e, MinorOp op) {
    const PrimeField& f = input.q.field();
    if (input.p.nrows() > 0 && input.p.field() != f)
        throw std::invalid_argument("frame_minor_step: field mismatch");
    std::set<Label> pset(input.p.col_labels().begin(), input.p.col_labels().end());
    std::set<Label> qset(input.q.col_labels().begin(), input.q.col_labels().end());
    if (pset != qset) throw std::invalid_argument("frame_minor_step: column labels disagree");
    if (!qset.count(e)) throw std::invalid_argument("frame_minor_step: unknown element");

    Mat p = input.p;
    Mat q = input.q.cols_submatrix(p.col_labels());
    auto witness = is_frame_matrix_up_to_scaling(q, gamma);
    if (!witness) throw std::invalid_argument("frame_minor_step: bottom block is not a frame matrix");
    for (const auto& [lbl, s] : *witness) {
        q.scale_col(q.col_index(lbl), s);
        if (p.nrows() > 0) p.scale_col(p.col_index(lbl), s);
    }

    std::vector<Label> keep;
    for (const auto& c : p.col_labels()) {
        if (c != e) keep.push_back(c);
    }

    if (op == MinorOp::Delete) return {p.cols_submatrix(keep), q.cols_submatrix(keep)};

    const size_t je = q.col_index(e);
    std::vector<size_t> qsupport;
    for (size_t i = 0; i < q.nrows(); ++i) {
        if (q.at(i, je) != 0) qsupport.push_back(i);
    }
    std::vector<size_t> psupport;
    for (size_t i = 0; i < p.nrows(); ++i) {
        if (p.at(i, p.col_index(e)) != 0) psupport.push_back(i);
    }
    if (qsupport.empty() && psupport.empty())
        throw std::invalid_argument("frame_minor_step: cannot contract a loop");

    if (!qsupport.empty()) {
        const size_t a = qsupport[0];
        if (p.nrows() > 0) {
            const size_t jep = p.col_index(e);
            for (size_t rho = 0; rho < p.nrows(); ++rho) {
                const int c = p.at(rho, jep);
                if (c == 0) continue;
                const int coef = f.neg(f.div(c, q.at(a, je)));
                for (size_t col = 0; col < p.ncols(); ++col) {
                    const Label& lbl = p.col_labels()[col];
                    p.set(rho, col, f.add(p.at(rho, col), f.mul(coef, q.entry(q.row_labels()[a], lbl))));
                }
            }
        }
        if (qsupport.size() == 2) {
            const size_t b = qsupport[1];
            q.axpy_row(b, q.at(b, je), a);  // q[a,e] = -1, so this zeroes q[b,e]
        }
        std::vector<Label> qrows;
        for (size_t i = 0; i < q.nrows(); ++i) {
            if (i != a) qrows.push_back(q.row_labels()[i]);
        }
        return {p.cols_submatrix(keep), q.submatrix(qrows, keep)};
    }

    const size_t r = psupport[0];
    const size_t jep = p.col_index(e);
    for (size_t rho = 0; rho < p.nrows(); ++rho) {
        if (rho == r || p.at(rho, jep) == 0) continue;
        p.axpy_row(rho, f.neg(f.div(p.at(rho, jep), p.at(r, jep))), r);
    }
    std::vector<Label> prows;
    for (size_t i = 0; i < p.nrows(); ++i) {
        if (i != r) prows.push_back(p.row_labels()[i]);
    }
    return {p.submatrix(prows, keep), q.cols_submatrix(keep)};
}

enum class GeometryKind { Projective, Affine };

// PG(dim,p) or AG(dim,p) with one column per point, labels v{coords}.
inline RepresentedMatroid geometry(GeometryKind kind, int dim, const PrimeField& f) {
    if (dim < 0) throw std::invalid_argument("geometry: dimension must be nonnegative");
    const int p = f.p();
    double size_estimate = 1;
    for (int i = 0; i <= dim; ++i) size_estimate *= p;
    if (size_estimate > (1 << 24)) throw BudgetExceeded("geometry: too many points");

    std::vector<Label> rows;
    for (int i = 1; i <= dim + 1; ++i) rows.push_back("r" + std::to_string(i));
    std::vector<detail::LabeledColumn> cols;
    for (const auto& v : detail::all_vectors(p, dim + 1)) {
        size_t lead = 0;
        while (lead < v.size() && v[lead] == 0) ++lead;
        if (kind == GeometryKind::Projective) {
            if (lead == v.size() || v[lead] != 1) continue;
        } else {
            if (lead != 0 || v[0] != 1) continue;
        }
        cols.push_back({"v" + detail::vec_suffix(v), v});
    }
    return RepresentedMatroid(detail::assemble_columns(f, rows, std::move(cols)));
}

inline RepresentedMatroid pg(int dim, const PrimeField& f) {
    return geometry(GeometryKind::Projective, dim, f);
}

inline RepresentedMatroid ag(int dim, const PrimeField& f) {
    return geometry(GeometryKind::Affine, dim, f);
}

}  // namespace framelab

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "framelab/frames.hpp"
#include "framelab/mat.hpp"
#include "framelab/rmatroid.hpp"
#include "framelab/subspace.hpp"

namespace framelab {

// A frame template over GF(p) with subgroup Gamma of the multiplicative
// group. The data: disjoint label sets C, X, Y0, Y1; a matrix A1 with rows X
// and columns C|Y0|Y1; a subspace Delta of the row space on C|Y0|Y1; a
// subspace Lambda of F^X. Stored canonically: each label block sorted
// ascending, A1 rows in X order and columns in (C, Y0, Y1) order, Delta and
// Lambda bases in reduced row echelon form over those coordinate orders.
class FrameTemplate {
public:
    FrameTemplate(SubgroupGamma gamma, std::vector<Label> c, std::vector<Label> x,
                  std::vector<Label> y0, std::vector<Label> y1, Mat a1, Subspace delta,
                  Subspace lambda)
        : gamma_(std::move(gamma)),
          c_(std::move(c)),
          x_(std::move(x)),
          y0_(std::move(y0)),
          y1_(std::move(y1)),
          a1_(a1.field(), {}, {}),
          delta_(Subspace::zero(a1.field(), {})),
          lambda_(Subspace::zero(a1.field(), {})) {
        std::sort(c_.begin(), c_.end());
        std::sort(x_.begin(), x_.end());
        std::sort(y0_.begin(), y0_.end());
        std::sort(y1_.begin(), y1_.end());

        std::set<Label> seen;
        for (const auto* block : {&c_, &x_, &y0_, &y1_})
            for (const Label& l : *block)
                if (!seen.insert(l).second)
                    throw std::invalid_argument("FrameTemplate: label sets must be disjoint");

        const PrimeField& f = a1.field();
        if (gamma_.p() != f.p() || delta.field() != f || lambda.field() != f)
            throw std::invalid_argument("FrameTemplate: field mismatch");

        std::vector<Label> cols = cy_labels();
        check_label_set(a1.row_labels(), x_, "A1 rows");
        check_label_set(a1.col_labels(), cols, "A1 columns");
        check_label_set(delta.ambient(), cols, "Delta ambient");
        check_label_set(lambda.ambient(), x_, "Lambda ambient");

        a1_ = a1.submatrix(x_, cols);
        delta_ = Subspace::from_rows(delta.basis().cols_submatrix(cols));
        lambda_ = Subspace::from_rows(lambda.basis().cols_submatrix(x_));
    }

    const PrimeField& field() const { return a1_.field(); }
    const SubgroupGamma& gamma() const { return gamma_; }
    const std::vector<Label>& c() const { return c_; }
    const std::vector<Label>& x() const { return x_; }
    const std::vector<Label>& y0() const { return y0_; }
    const std::vector<Label>& y1() const { return y1_; }
    const Mat& a1() const { return a1_; }
    const Subspace& delta() const { return delta_; }
    const Subspace& lambda() const { return lambda_; }

    // Column labels of A1 in the canonical (C, Y0, Y1) order.
    std::vector<Label> cy_labels() const {
        std::vector<Label> cols = c_;
        cols.insert(cols.end(), y0_.begin(), y0_.end());
        cols.insert(cols.end(), y1_.begin(), y1_.end());
        return cols;
    }

    int complexity() const {
        return static_cast<int>(c_.size() + x_.size() + y0_.size() + y1_.size());
    }

    bool operator==(const FrameTemplate& o) const {
        return gamma_ == o.gamma_ && c_ == o.c_ && x_ == o.x_ && y0_ == o.y0_ &&
               y1_ == o.y1_ && a1_ == o.a1_ && delta_ == o.delta_ && lambda_ == o.lambda_;
    }
    bool operator!=(const FrameTemplate& o) const { return !(*this == o); }

private:
    static void check_label_set(const std::vector<Label>& got, const std::vector<Label>& want,
                                const char* what) {
        std::set<Label> a(got.begin(), got.end()), b(want.begin(), want.end());
        if (got.size() != a.size() || a != b)
            throw std::invalid_argument(std::string("FrameTemplate: ") + what +
                                        " must carry exactly the declared labels");
    }

    SubgroupGamma gamma_;
    std::vector<Label> c_, x_, y0_, y1_;
    Mat a1_;
    Subspace delta_;
    Subspace lambda_;
};

// The empty template; its conforming matroids are exactly the frame matroids
// of the given subgroup.
inline FrameTemplate trivial_template(const PrimeField& f, const SubgroupGamma& gamma) {
    return FrameTemplate(gamma, {}, {}, {}, {}, Mat(f, {}, {}), Subspace::zero(f, {}),
                         Subspace::zero(f, {}));
}

// Template whose conforming matroids are the rank-(t) lifts of frame
// matroids: X = {x1..xt}, everything else empty, Lambda the full space.
inline FrameTemplate frame_class_template(const PrimeField& f, const SubgroupGamma& gamma,
                                          int t) {
    if (t < 0) throw std::invalid_argument("frame_class_template: t must be nonnegative");
    std::vector<Label> x;
    for (int i = 1; i <= t; ++i) x.push_back("x" + std::to_string(i));
    return FrameTemplate(gamma, {}, x, {}, {}, Mat(f, x, {}), Subspace::zero(f, {}),
                         Subspace::full(f, x));
}

// Column operations applied after a respecting matrix is chosen: each entry
// (z -> y) adds column y into column z. Realized as the matrix I + H with
// H[y][z] = 1, so (A * S) has column z equal to A[:,z] + A[:,y].
struct ShiftMatrix {
    std::vector<Label> ground;
    std::map<Label, Label> assignment;

    Mat to_matrix(const PrimeField& f) const {
        Mat s = Mat::identity(f, ground);
        for (const auto& [z, y] : assignment) {
            if (!s.has_col(z) || !s.has_col(y))
                throw std::invalid_argument("ShiftMatrix: assignment label outside ground set");
            if (z == y) throw std::invalid_argument("ShiftMatrix: column cannot shift itself");
            s.set_entry(y, z, 1);
        }
        return s;
    }
};

// Classification of the columns outside C|Y0|Y1 of a respecting matrix.
// frame_cols satisfy the frame condition (X-part in Lambda, remainder an
// exact frame column); z_cols are eligible for shifting (zero X-part, unit
// remainder). A column may qualify for both lists.
struct RespectWitness {
    std::vector<Label> frame_cols;
    std::vector<Label> z_cols;
};

// Decide whether the matrix a respects the template: a carries all rows X
// and columns C|Y0|Y1, agrees with A1 on the (X, C|Y0|Y1) block, every other
// row lies in Delta on those columns, and every other column is a frame
// column or shift-eligible.
inline std::optional<RespectWitness> respects(const Mat& a, const FrameTemplate& phi) {
    const PrimeField& f = phi.field();
    if (a.field() != f) throw std::invalid_argument("respects: field mismatch");

    for (const Label& l : phi.x())
        if (!a.has_row(l)) return std::nullopt;
    const std::vector<Label> cy = phi.cy_labels();
    for (const Label& l : cy)
        if (!a.has_col(l)) return std::nullopt;

    if (a.submatrix(phi.x(), cy) != phi.a1()) return std::nullopt;

    std::set<Label> xset(phi.x().begin(), phi.x().end());
    std::vector<Label> bottom_rows;
    for (const Label& r : a.row_labels())
        if (!xset.count(r)) bottom_rows.push_back(r);

    const Mat cy_block = a.submatrix(bottom_rows, cy);
    for (size_t i = 0; i < cy_block.nrows(); ++i) {
        std::vector<uint8_t> v(cy.size());
        for (size_t j = 0; j < cy.size(); ++j) v[j] = static_cast<uint8_t>(cy_block.at(i, j));
        if (!phi.delta().contains(v)) return std::nullopt;
    }

    std::set<Label> cyset(cy.begin(), cy.end());
    RespectWitness w;
    for (const Label& e : a.col_labels()) {
        if (cyset.count(e)) continue;
        std::vector<uint8_t> top(phi.x().size());
        for (size_t i = 0; i < phi.x().size(); ++i)
            top[i] = static_cast<uint8_t>(a.entry(phi.x()[i], e));
        std::vector<uint8_t> rest(bottom_rows.size());
        for (size_t i = 0; i < bottom_rows.size(); ++i)
            rest[i] = static_cast<uint8_t>(a.entry(bottom_rows[i], e));

        const bool top_zero =
            std::all_of(top.begin(), top.end(), [](uint8_t v) { return v == 0; });
        const bool frame_ok = phi.lambda().contains(top) &&
                              is_exact_frame_column(f, phi.gamma(), rest);
        size_t weight = 0, unit_entries = 0;
        for (uint8_t v : rest) {
            if (v != 0) ++weight;
            if (v == 1) ++unit_entries;
        }
        const bool z_ok = top_zero && weight == 1 && unit_entries == 1;

        if (frame_ok) w.frame_cols.push_back(e);
        if (z_ok) w.z_cols.push_back(e);
        if (!frame_ok && !z_ok) return std::nullopt;
    }
    return w;
}

// M(A*S) with C contracted and Y1 deleted, for a respecting matrix A and a
// shift matrix S sending shift-eligible columns into Y1.
inline RepresentedMatroid conforming_matroid(const Mat& a, const ShiftMatrix& s,
                                             const FrameTemplate& phi) {
    auto w = respects(a, phi);
    if (!w) throw std::invalid_argument("conforming_matroid: matrix does not respect the template");

    std::set<Label> ground_a(a.col_labels().begin(), a.col_labels().end());
    std::set<Label> ground_s(s.ground.begin(), s.ground.end());
    if (ground_a != ground_s || s.ground.size() != a.ncols())
        throw std::invalid_argument("conforming_matroid: shift ground set mismatch");

    std::set<Label> zset(w->z_cols.begin(), w->z_cols.end());
    std::set<Label> y1set(phi.y1().begin(), phi.y1().end());
    for (const auto& [z, y] : s.assignment) {
        if (!zset.count(z))
            throw std::invalid_argument("conforming_matroid: shifted column is not shift-eligible");
        if (!y1set.count(y))
            throw std::invalid_argument("conforming_matroid: shift target outside Y1");
    }

    RepresentedMatroid m(a.mul(s.to_matrix(phi.field())));
    m = contract_elements(m, phi.c());
    m = delete_elements(m, phi.y1());
    return m;
}

}  // namespace framelab

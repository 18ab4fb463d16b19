#pragma once

#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "framelab/rmatroid.hpp"

namespace framelab {

enum class IsoMode { Abstract, Represented };

struct IsoCertificate {
    std::map<Label, Label> bijection;
    // Diagonal witness for represented mode; empty in abstract mode.
    ColScaling scalings;
};

namespace detail {

// Rank queries on subsets of a fixed column family, addressed by bitmask.
class RankOracle {
public:
    RankOracle(const PrimeField& f, std::vector<std::vector<uint8_t>> cols)
        : f_(f), cols_(std::move(cols)) {
        k_ = cols_.size();
        if (k_ > 20) throw std::domain_error("RankOracle: more than 20 columns");
        dim_ = cols_.empty() ? 0 : cols_[0].size();
        if (k_ <= 16) {
            table_.assign(size_t(1) << k_, 0);
            IncrementalBasis basis(f_, dim_);
            fill(0, 0, basis);
        }
    }

    int rank(uint32_t mask) const {
        if (!table_.empty()) return table_[mask];
        auto it = cache_.find(mask);
        if (it != cache_.end()) return it->second;
        IncrementalBasis basis(f_, dim_);
        for (size_t j = 0; j < k_; ++j)
            if (mask & (1u << j)) basis.insert(cols_[j]);
        cache_.emplace(mask, static_cast<uint8_t>(basis.rank()));
        return basis.rank();
    }

    bool independent(uint32_t mask) const {
        return rank(mask) == std::popcount(mask);
    }

private:
    void fill(uint32_t mask, size_t next, IncrementalBasis& basis) {
        table_[mask] = static_cast<uint8_t>(basis.rank());
        for (size_t j = next; j < k_; ++j) {
            IncrementalBasis saved = basis;
            basis.insert(cols_[j]);
            fill(mask | (1u << j), j + 1, basis);
            basis = std::move(saved);
        }
    }

    PrimeField f_;
    std::vector<std::vector<uint8_t>> cols_;
    size_t k_ = 0, dim_ = 0;
    std::vector<uint8_t> table_;
    mutable std::unordered_map<uint32_t, uint8_t> cache_;
};

// Hyperplanes (maximal proper flats) of a simple matroid, as column bitmasks.
// Every such flat arises as the zero set of a covector; the inclusion-maximal
// zero sets are exactly the hyperplanes. Returns nothing when the covector
// count is too large to scan.
inline std::optional<std::vector<uint32_t>> hyperplane_masks(const RepresentedMatroid& m) {
    const PrimeField& f = m.field();
    const int r = m.rank();
    const size_t n = m.size();
    if (n > 20) throw std::domain_error("hyperplane_masks: ground set larger than 20");
    if (r == 0) return std::vector<uint32_t>{};
    double count = (std::pow(double(f.p()), r) - 1) / (f.p() - 1);
    if (count > 200000) return std::nullopt;

    std::vector<std::vector<uint8_t>> cols;
    for (const Label& e : m.ground()) cols.push_back(m.rep().col_vector(e));

    std::set<uint32_t> zero_sets;
    // Canonical covector representatives: first nonzero coordinate equals 1.
    std::function<void(int)> scan = [&](int lead) {
        if (lead == r) return;
        std::vector<int> v(r, 0);
        v[lead] = 1;
        std::vector<int> idx;
        for (int i = lead + 1; i < r; ++i) idx.push_back(i);
        std::vector<int> digits(idx.size(), 0);
        while (true) {
            uint32_t mask = 0;
            for (size_t j = 0; j < n; ++j) {
                int dot = 0;
                for (int i = lead; i < r; ++i)
                    dot = f.add(dot, f.mul(v[i], cols[j][i]));
                if (dot == 0) mask |= 1u << j;
            }
            zero_sets.insert(mask);
            int i = static_cast<int>(idx.size()) - 1;
            while (i >= 0 && digits[i] == f.p() - 1) { digits[i] = 0; v[idx[i]] = 0; --i; }
            if (i < 0) break;
            ++digits[i];
            v[idx[i]] = digits[i];
        }
        scan(lead + 1);
    };
    scan(0);

    std::vector<uint32_t> all(zero_sets.begin(), zero_sets.end());
    std::vector<uint32_t> maximal;
    for (uint32_t h : all) {
        bool is_max = true;
        for (uint32_t o : all)
            if (o != h && (h & o) == h) { is_max = false; break; }
        if (is_max) maximal.push_back(h);
    }
    return maximal;
}

struct SimpleProfile {
    // Per simple element: (parallel class size in the original, hyperplane
    // size histogram through the element). Used for invariant pruning.
    std::vector<std::vector<int>> profile;
    std::vector<Label> elements;          // sorted representative labels
    std::vector<long long> class_sizes;   // aligned with elements
    std::vector<std::vector<Label>> class_members;
    std::vector<Label> loops;
    std::optional<std::vector<uint32_t>> hyperplanes;
};

inline SimpleProfile build_profile(const RepresentedMatroid& m, const SimplifyResult& si) {
    SimpleProfile out;
    std::map<Label, std::vector<Label>> members;
    for (const auto& [e, rep] : si.class_rep) members[rep].push_back(e);
    for (const Label& e : m.ground())
        if (!si.class_rep.count(e)) out.loops.push_back(e);
    out.elements = si.matroid.ground();
    for (const Label& e : out.elements) {
        out.class_sizes.push_back(static_cast<long long>(members[e].size()));
        std::sort(members[e].begin(), members[e].end());
        out.class_members.push_back(members[e]);
    }
    out.hyperplanes = hyperplane_masks(si.matroid);
    for (size_t i = 0; i < out.elements.size(); ++i) {
        std::vector<int> prof;
        prof.push_back(static_cast<int>(out.class_sizes[i]));
        if (out.hyperplanes) {
            std::vector<int> through;
            for (uint32_t h : *out.hyperplanes)
                if (h & (1u << i)) through.push_back(std::popcount(h));
            std::sort(through.begin(), through.end());
            prof.insert(prof.end(), through.begin(), through.end());
        }
        out.profile.push_back(std::move(prof));
    }
    return out;
}

template <typename T>
inline bool multiset_equal(std::vector<T> a, std::vector<T> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

// Backtracking bijection search between two simple matroids, preserving
// independence of every mapped subset (checked incrementally through the
// rank oracles) and the per-element invariant profiles.
inline std::optional<std::vector<size_t>> simple_abstract_iso(
    const SimpleProfile& pa, const RankOracle& oa, int ra,
    const SimpleProfile& pb, const RankOracle& ob) {
    const size_t k = pa.elements.size();
    if (k != pb.elements.size()) return std::nullopt;
    if (k == 0) return std::vector<size_t>{};

    // Process rarest profiles first; candidate lists per position.
    std::vector<size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::map<std::vector<int>, int> freq;
    for (const auto& pr : pa.profile) ++freq[pr];
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return freq[pa.profile[x]] < freq[pa.profile[y]];
    });

    std::vector<size_t> image(k, SIZE_MAX);
    std::vector<bool> used(k, false);
    std::vector<uint32_t> amask_at(k + 1, 0), bmask_at(k + 1, 0);

    std::function<bool(size_t)> dfs = [&](size_t depth) -> bool {
        if (depth == k) return true;
        size_t x = order[depth];
        for (size_t y = 0; y < k; ++y) {
            if (used[y] || pa.profile[x] != pb.profile[y]) continue;
            // Check that independence is preserved for all subsets of the
            // mapped prefix that include x (sizes up to the rank suffice).
            uint32_t sa = amask_at[depth], sb = bmask_at[depth];
            bool ok = true;
            std::vector<size_t> prev;
            for (size_t d = 0; d < depth; ++d) prev.push_back(order[d]);
            int max_extra = ra - 1;
            std::function<bool(size_t, uint32_t, uint32_t, int)> subsets =
                [&](size_t idx, uint32_t ma, uint32_t mb, int left) -> bool {
                if (oa.independent(ma) != ob.independent(mb)) return false;
                if (left == 0 || idx == prev.size()) return true;
                for (size_t t = idx; t < prev.size(); ++t) {
                    size_t px = prev[t];
                    if (!subsets(t + 1, ma | (1u << px), mb | (1u << image[px]), left - 1))
                        return false;
                }
                return true;
            };
            ok = subsets(0, 1u << x, 1u << y, max_extra);
            if (!ok) continue;
            image[x] = y;
            used[y] = true;
            amask_at[depth + 1] = sa | (1u << x);
            bmask_at[depth + 1] = sb | (1u << y);
            if (dfs(depth + 1)) return true;
            image[x] = SIZE_MAX;
            used[y] = false;
        }
        return false;
    };
    if (!dfs(0)) return std::nullopt;
    return image;
}

} // namespace detail

// Verify that a specific bijection preserves the rank function (abstract
// isomorphism replay). Checks independence agreement on all subsets of size
// up to the common rank.
inline bool is_rank_preserving_bijection(const RepresentedMatroid& a, const RepresentedMatroid& b,
                                         const std::map<Label, Label>& phi) {
    if (a.size() != b.size() || a.rank() != b.rank()) return false;
    if (phi.size() != a.size()) return false;
    std::vector<std::vector<uint8_t>> ca, cb;
    for (const Label& e : a.ground()) {
        auto it = phi.find(e);
        if (it == phi.end() || !b.has_element(it->second)) return false;
        ca.push_back(a.rep().col_vector(e));
        cb.push_back(b.rep().col_vector(it->second));
    }
    {
        std::set<Label> seen;
        for (const auto& [k, v] : phi) { (void)k; seen.insert(v); }
        if (seen.size() != phi.size()) return false;
    }
    const size_t n = a.size();
    if (n > 20) throw std::domain_error("is_rank_preserving_bijection: ground set larger than 20");
    detail::RankOracle oa(a.field(), ca), ob(b.field(), cb);
    const int r = a.rank();
    bool ok = true;
    std::function<void(size_t, uint32_t, int)> walk = [&](size_t idx, uint32_t mask, int left) {
        if (!ok) return;
        if (oa.independent(mask) != ob.independent(mask)) { ok = false; return; }
        if (left == 0) return;
        for (size_t t = idx; t < n && ok; ++t) walk(t + 1, mask | (1u << t), left - 1);
    };
    walk(0, 0, r);
    return ok;
}

inline std::optional<IsoCertificate> is_isomorphic(const RepresentedMatroid& a,
                                                   const RepresentedMatroid& b, IsoMode mode) {
    if (a.field() != b.field()) return std::nullopt;
    if (a.size() != b.size() || a.rank() != b.rank()) return std::nullopt;
    if (a.size() > 20) throw std::domain_error("is_isomorphic: ground set larger than 20");

    SimplifyResult sa = simplify(a), sb = simplify(b);
    if (sa.epsilon != sb.epsilon) return std::nullopt;

    detail::SimpleProfile pa = detail::build_profile(a, sa);
    detail::SimpleProfile pb = detail::build_profile(b, sb);
    if (pa.loops.size() != pb.loops.size()) return std::nullopt;
    if (!detail::multiset_equal(pa.class_sizes, pb.class_sizes)) return std::nullopt;
    if (pa.hyperplanes.has_value() == pb.hyperplanes.has_value()) {
        if (pa.hyperplanes) {
            std::vector<int> ha, hb;
            for (uint32_t h : *pa.hyperplanes) ha.push_back(std::popcount(h));
            for (uint32_t h : *pb.hyperplanes) hb.push_back(std::popcount(h));
            if (!detail::multiset_equal(ha, hb)) return std::nullopt;
        }
    }
    if (!detail::multiset_equal(pa.profile, pb.profile)) return std::nullopt;

    std::map<Label, Label> bijection;
    for (size_t i = 0; i < pa.loops.size(); ++i) bijection[pa.loops[i]] = pb.loops[i];

    if (mode == IsoMode::Abstract) {
        std::vector<std::vector<uint8_t>> ca, cb;
        for (const Label& e : pa.elements) ca.push_back(sa.matroid.rep().col_vector(e));
        for (const Label& e : pb.elements) cb.push_back(sb.matroid.rep().col_vector(e));
        detail::RankOracle oa(a.field(), ca), ob(b.field(), cb);
        auto image = detail::simple_abstract_iso(pa, oa, a.rank(), pb, ob);
        if (!image) return std::nullopt;
        for (size_t i = 0; i < pa.elements.size(); ++i) {
            size_t j = (*image)[i];
            if (pa.class_members[i].size() != pb.class_members[j].size()) return std::nullopt;
            for (size_t t = 0; t < pa.class_members[i].size(); ++t)
                bijection[pa.class_members[i][t]] = pb.class_members[j][t];
        }
        return IsoCertificate{std::move(bijection), {}};
    }

    // Represented mode: pick the image of a fixed basis of a, transform b so
    // that image becomes the standard basis, then match the remaining columns
    // as parallel classes of exact vectors.
    const PrimeField& f = a.field();
    const size_t k = pa.elements.size();
    const int r = a.rank();
    if (static_cast<size_t>(r) > k && k > 0) return std::nullopt;
    if (k == 0) {
        // Everything is a loop.
        IsoCertificate cert{std::move(bijection), {}};
        for (const Label& e : a.ground()) cert.scalings[cert.bijection[e]] = 1;
        return cert;
    }

    std::vector<std::vector<uint8_t>> ca, cb;
    for (const Label& e : pa.elements) ca.push_back(sa.matroid.rep().col_vector(e));
    for (const Label& e : pb.elements) cb.push_back(sb.matroid.rep().col_vector(e));

    // Basis of a: pivot columns of the canonical representation.
    std::vector<size_t> basis_a;
    {
        IncrementalBasis ib(f, r);
        for (size_t i = 0; i < k && static_cast<int>(basis_a.size()) < r; ++i)
            if (ib.insert(ca[i])) basis_a.push_back(i);
    }

    std::vector<size_t> tuple;
    std::vector<bool> used(k, false);
    std::optional<IsoCertificate> found;

    auto try_complete = [&]() -> bool {
        std::vector<Label> tuple_labels;
        for (int i = 0; i < r; ++i) tuple_labels.push_back("t" + std::to_string(i));
        Mat sel(f, sb.matroid.rep().row_labels(), tuple_labels);
        for (int i = 0; i < r; ++i)
            for (int rr2 = 0; rr2 < r; ++rr2) sel.set(rr2, i, cb[tuple[i]][rr2]);
        Mat t = inverse(sel);  // the tuple was chosen independent

        // b's columns in the coordinate system where the tuple is the basis.
        std::vector<std::vector<uint8_t>> ub(k);
        for (size_t j = 0; j < k; ++j) {
            std::vector<uint8_t> v(r, 0);
            for (int rr2 = 0; rr2 < r; ++rr2) {
                int s = 0;
                for (int c = 0; c < r; ++c) s = f.add(s, f.mul(t.at(rr2, c), cb[j][c]));
                v[rr2] = static_cast<uint8_t>(s);
            }
            ub[j] = std::move(v);
        }
        auto support = [&](const std::vector<uint8_t>& v) {
            uint32_t m = 0;
            for (int i2 = 0; i2 < r; ++i2)
                if (v[i2]) m |= 1u << i2;
            return m;
        };

        // The tuple fixes the transform only up to a row scaling, so a column
        // pair (v, u) means u = mu * (lambda o v) for some scalar mu and row
        // factors lambda. Match the remaining columns by DFS, carrying the
        // implied ratios between row factors and refusing contradictions.
        std::vector<size_t> sigma(k, SIZE_MAX);
        std::vector<bool> busy(k, false);
        for (int i = 0; i < r; ++i) { sigma[basis_a[i]] = tuple[i]; busy[tuple[i]] = true; }
        std::vector<size_t> rest;
        for (size_t i = 0; i < k; ++i)
            if (sigma[i] == SIZE_MAX) rest.push_back(i);

        struct RowScale { std::vector<int> comp, val; };
        RowScale init;
        init.comp.resize(r);
        init.val.assign(r, 1);
        std::iota(init.comp.begin(), init.comp.end(), 0);

        auto absorb = [&](RowScale& rs, const std::vector<uint8_t>& va,
                          const std::vector<uint8_t>& vb) -> bool {
            int s1 = -1;
            for (int i2 = 0; i2 < r; ++i2)
                if (va[i2]) { s1 = i2; break; }
            if (s1 < 0) return true;
            int rho1 = f.mul(vb[s1], f.inv(va[s1]));
            for (int s2 = s1 + 1; s2 < r; ++s2) {
                if (!va[s2]) continue;
                int rho = f.mul(vb[s2], f.inv(va[s2]));
                int q = f.mul(rho, f.inv(rho1));  // required lambda_s2 / lambda_s1
                int want = f.mul(q, rs.val[s1]);
                if (rs.comp[s2] == rs.comp[s1]) {
                    if (rs.val[s2] != want) return false;
                } else {
                    int factor = f.mul(want, f.inv(rs.val[s2]));
                    int from = rs.comp[s2], to = rs.comp[s1];
                    for (int t2 = 0; t2 < r; ++t2)
                        if (rs.comp[t2] == from) {
                            rs.comp[t2] = to;
                            rs.val[t2] = f.mul(rs.val[t2], factor);
                        }
                }
            }
            return true;
        };

        std::function<bool(size_t, const RowScale&)> match =
            [&](size_t pos, const RowScale& rs) -> bool {
            if (pos == rest.size()) {
                std::map<Label, Label> bij = bijection;
                for (size_t i2 = 0; i2 < k; ++i2) {
                    size_t j2 = sigma[i2];
                    if (pa.class_members[i2].size() != pb.class_members[j2].size()) return false;
                    for (size_t u2 = 0; u2 < pa.class_members[i2].size(); ++u2)
                        bij[pa.class_members[i2][u2]] = pb.class_members[j2][u2];
                }
                // Witness scalings via a full projective-equivalence replay.
                Mat relabeled = a.rep();
                std::vector<Label> new_cols;
                for (const Label& e : a.ground()) new_cols.push_back(bij.at(e));
                relabeled.relabel_cols(new_cols);
                auto d = projectively_equivalent(relabeled, b.rep());
                if (!d) return false;
                found = IsoCertificate{std::move(bij), std::move(*d)};
                return true;
            }
            size_t i2 = rest[pos];
            uint32_t sup = support(ca[i2]);
            for (size_t j2 = 0; j2 < k; ++j2) {
                if (busy[j2]) continue;
                if (pa.class_sizes[i2] != pb.class_sizes[j2]) continue;
                if (support(ub[j2]) != sup) continue;
                RowScale next = rs;
                if (!absorb(next, ca[i2], ub[j2])) continue;
                sigma[i2] = j2;
                busy[j2] = true;
                if (match(pos + 1, next)) return true;
                sigma[i2] = SIZE_MAX;
                busy[j2] = false;
            }
            return false;
        };
        return match(0, init);
    };

    std::function<bool(int)> dfs_tuple = [&](int depth) -> bool {
        if (depth == r) return try_complete();
        size_t pivot_elem = basis_a[depth];
        for (size_t y = 0; y < k; ++y) {
            if (used[y]) continue;
            if (pa.class_sizes[pivot_elem] != pb.class_sizes[y]) continue;
            // Partial independence of the chosen tuple.
            IncrementalBasis ib(f, r);
            bool indep = true;
            for (int d = 0; d < depth && indep; ++d) indep = ib.insert(cb[tuple[d]]);
            if (indep) indep = ib.insert(cb[y]);
            if (!indep) continue;
            tuple.push_back(y);
            used[y] = true;
            if (dfs_tuple(depth + 1)) return true;
            tuple.pop_back();
            used[y] = false;
        }
        return false;
    };
    if (!dfs_tuple(0)) return std::nullopt;
    return found;
}

} // namespace framelab

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "framelab/certificates.hpp"
#include "framelab/frames.hpp"
#include "framelab/isomorphism.hpp"
#include "framelab/rmatroid.hpp"

namespace framelab {

struct SearchConfig {
    int max_ground = 20;
    long long max_candidates = 50000000;
    bool parallel = false;
    // Tie breaking is lexicographic over sorted ground labels; kept explicit
    // so configs round-trip through the CLI.
    std::string tie_break = "lexicographic";
};

namespace detail {

struct AbstractFingerprint {
    size_t size = 0;
    int rnk = 0;
    long long eps = 0;

    bool operator<(const AbstractFingerprint& o) const {
        return std::tie(size, rnk, eps) < std::tie(o.size, o.rnk, o.eps);
    }
};

inline AbstractFingerprint abstract_fingerprint(const RepresentedMatroid& m) {
    return {m.size(), m.rank(), epsilon(m)};
}

}  // namespace detail

// Search host for a minor abstractly isomorphic to pattern. The pattern must
// be simple; contraction sets range over independent sets of the right size
// (a quotient by a dependent set equals one by a maximal independent subset),
// deletions are implied by the chosen parallel-class representatives. Returns
// the lexicographically first certificate, or nothing after an exhaustive
// scan. Running past the candidate budget raises BudgetExceeded instead of
// answering.
inline std::optional<MinorCertificate> has_minor(const RepresentedMatroid& host,
                                                 const RepresentedMatroid& pattern,
                                                 const SearchConfig& cfg = {}) {
    if (host.field() != pattern.field())
        throw std::invalid_argument("has_minor: field mismatch");
    if (cfg.max_candidates <= 0 || cfg.max_ground <= 0)
        throw std::invalid_argument("has_minor: budgets must be positive");
    if (static_cast<int>(host.size()) > cfg.max_ground)
        throw std::invalid_argument("has_minor: host exceeds the ground budget");
    if (!is_simple(pattern))
        throw std::invalid_argument("has_minor: pattern must be simple");

    const int rp = pattern.rank();
    const size_t np = pattern.size();
    if (rp > host.rank() || np > host.size()) return std::nullopt;

    if (np == host.size()) {
        // A minor of full size is the host itself.
        if (rp != host.rank()) return std::nullopt;
        auto iso = is_isomorphic(pattern, host, IsoMode::Abstract);
        if (!iso) return std::nullopt;
        MinorCertificate cert;
        cert.map = iso->bijection;
        cert.mode = IsoMode::Abstract;
        return cert;
    }

    const int d = host.rank() - rp;
    std::vector<Label> ground = host.ground();
    std::sort(ground.begin(), ground.end());

    long long candidates = 0;
    std::vector<RepresentedMatroid> seen_quotients;
    std::map<detail::AbstractFingerprint, std::vector<size_t>> quotient_buckets;

    // Restriction scan inside one quotient: pick pattern-sized subsets of the
    // simplified ground in lex order, pruning on achievable rank.
    auto scan_restrictions =
        [&](const RepresentedMatroid& quotient,
            const std::vector<Label>& contracted) -> std::optional<MinorCertificate> {
        SimplifyResult s = simplify(quotient);
        if (s.matroid.size() < np || s.matroid.rank() != rp) return std::nullopt;
        std::vector<Label> pool = s.matroid.ground();
        std::sort(pool.begin(), pool.end());

        std::vector<std::vector<uint8_t>> cols;
        for (const Label& e : pool) cols.push_back(s.matroid.rep().col_vector(e));

        std::vector<Label> picked;
        std::optional<MinorCertificate> found;
        std::function<void(size_t, const IncrementalBasis&)> walk =
            [&](size_t idx, const IncrementalBasis& basis) {
                if (found) return;
                if (picked.size() == np) {
                    if (basis.rank() != rp) return;
                    if (++candidates > cfg.max_candidates)
                        throw BudgetExceeded("has_minor: candidate budget exceeded");
                    std::vector<Label> others;
                    for (const Label& e : quotient.ground())
                        if (std::find(picked.begin(), picked.end(), e) == picked.end())
                            others.push_back(e);
                    RepresentedMatroid restriction = delete_elements(quotient, others);
                    auto iso = is_isomorphic(pattern, restriction, IsoMode::Abstract);
                    if (!iso) return;
                    MinorCertificate cert;
                    cert.contracted = contracted;
                    cert.deleted = labels_minus(host.ground(), contracted);
                    cert.deleted = labels_minus(cert.deleted, picked);
                    std::sort(cert.deleted.begin(), cert.deleted.end());
                    cert.map = iso->bijection;
                    cert.mode = IsoMode::Abstract;
                    found = std::move(cert);
                    return;
                }
                const size_t need = np - picked.size();
                for (size_t j = idx; j + need <= pool.size() && !found; ++j) {
                    IncrementalBasis next = basis;
                    next.insert(cols[j]);
                    // Every later element adds at most one to the rank.
                    if (next.rank() + static_cast<int>(need) - 1 < rp) continue;
                    picked.push_back(pool[j]);
                    walk(j + 1, next);
                    picked.pop_back();
                }
            };
        walk(0, IncrementalBasis(s.matroid.field(), s.matroid.rank()));
        return found;
    };

    // Lex DFS over independent contraction sets of size d.
    std::vector<std::vector<uint8_t>> hostcols;
    for (const Label& e : ground) hostcols.push_back(host.rep().col_vector(e));

    std::vector<Label> contracted;
    std::optional<MinorCertificate> result;
    std::function<void(size_t, const IncrementalBasis&)> pick =
        [&](size_t idx, const IncrementalBasis& basis) {
            if (result) return;
            if (static_cast<int>(contracted.size()) == d) {
                RepresentedMatroid quotient =
                    d == 0 ? host : contract_elements_fast(host, contracted);
                detail::AbstractFingerprint fp = detail::abstract_fingerprint(quotient);
                for (size_t prev : quotient_buckets[fp])
                    if (is_isomorphic(seen_quotients[prev], quotient, IsoMode::Abstract)) return;
                quotient_buckets[fp].push_back(seen_quotients.size());
                seen_quotients.push_back(quotient);
                result = scan_restrictions(quotient, contracted);
                return;
            }
            for (size_t j = idx; j < ground.size() && !result; ++j) {
                IncrementalBasis next = basis;
                if (!next.insert(hostcols[j])) continue;
                contracted.push_back(ground[j]);
                pick(j + 1, next);
                contracted.pop_back();
            }
        };
    pick(0, IncrementalBasis(host.field(), host.rank()));
    return result;
}

struct ExtremalResult {
    long long max_size = 0;
    std::vector<RepresentedMatroid> extremal;
    bool exhaustive = false;
};

// Largest simple rank-n GF(p) matroid with no pattern minor, realized as a
// spanning subset of the points of PG(n-1, p), with all extremal examples up
// to abstract isomorphism. Sizes are scanned downward from the full
// geometry; the first size carrying a minor-free subset is the answer.
inline ExtremalResult max_simple_no_minor(int p, int n, const RepresentedMatroid& pattern,
                                          const SearchConfig& cfg = {}) {
    if (!((p == 2 && n >= 1 && n <= 5) || (p == 3 && n >= 1 && n <= 4)))
        throw std::invalid_argument(
            "max_simple_no_minor: supported ranks are 1..5 over GF(2) and 1..4 over GF(3)");
    if (cfg.max_candidates <= 0)
        throw std::invalid_argument("max_simple_no_minor: budgets must be positive");

    const PrimeField f(p);
    RepresentedMatroid full = pg(n - 1, f);
    std::vector<Label> points = full.ground();
    std::sort(points.begin(), points.end());
    const size_t npts = points.size();

    std::vector<std::vector<uint8_t>> cols;
    for (const Label& e : points) cols.push_back(full.rep().col_vector(e));

    long long candidates = 0;
    SearchConfig inner = cfg;

    for (size_t s = npts; s >= static_cast<size_t>(n); --s) {
        std::vector<RepresentedMatroid> classes;
        std::map<detail::AbstractFingerprint, std::vector<size_t>> buckets;
        std::vector<bool> minor_free;

        std::vector<Label> picked;
        std::function<void(size_t, const IncrementalBasis&)> walk =
            [&](size_t idx, const IncrementalBasis& basis) {
                if (picked.size() == s) {
                    if (basis.rank() != n) return;
                    if (++candidates > cfg.max_candidates)
                        throw BudgetExceeded("max_simple_no_minor: candidate budget exceeded");
                    RepresentedMatroid m(full.rep().cols_submatrix(picked));
                    detail::AbstractFingerprint fp = detail::abstract_fingerprint(m);
                    for (size_t prev : buckets[fp])
                        if (is_isomorphic(classes[prev], m, IsoMode::Abstract)) return;
                    buckets[fp].push_back(classes.size());
                    classes.push_back(m);
                    minor_free.push_back(!has_minor(m, pattern, inner).has_value());
                    return;
                }
                const size_t need = s - picked.size();
                for (size_t j = idx; j + need <= npts; ++j) {
                    IncrementalBasis next = basis;
                    next.insert(cols[j]);
                    if (next.rank() + static_cast<int>(need) - 1 < n) continue;
                    picked.push_back(points[j]);
                    walk(j + 1, next);
                    picked.pop_back();
                }
            };
        walk(0, IncrementalBasis(f, n));

        ExtremalResult out;
        for (size_t i = 0; i < classes.size(); ++i)
            if (minor_free[i]) out.extremal.push_back(classes[i]);
        if (!out.extremal.empty()) {
            out.max_size = static_cast<long long>(s);
            out.exhaustive = true;
            return out;
        }
    }
    // Even a basis carries the pattern; no simple rank-n example avoids it.
    return {0, {}, true};
}

struct CoframeReport {
    long long r = 0;
    long long eps = 0;
    bool holds = false;
    bool cosimple = false;
};

// Density of the dual of a frame matroid: epsilon of the dual against three
// times its rank. The sharp statement wants a cosimple primal, so the report
// carries that flag rather than rejecting degenerate inputs.
inline CoframeReport coframe_density_check(const Mat& frame, const SubgroupGamma& gamma) {
    if (!is_frame_matrix_up_to_scaling(frame, gamma))
        throw std::invalid_argument("coframe_density_check: not a frame matrix");
    RepresentedMatroid m(frame);
    RepresentedMatroid star = dual(m);
    CoframeReport rep;
    rep.r = star.rank();
    rep.eps = epsilon(star);
    rep.holds = rep.eps <= 3 * rep.r;
    rep.cosimple = is_simple(star);
    return rep;
}

inline std::vector<RepresentedMatroid> vertically_connected_filter(
    const std::vector<RepresentedMatroid>& matroids, int k) {
    std::vector<RepresentedMatroid> out;
    for (const auto& m : matroids)
        if (is_vertically_k_connected(m, k)) out.push_back(m);
    return out;
}

}  // namespace framelab

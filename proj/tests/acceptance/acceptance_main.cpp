// Acceptance gate: eight end-to-end checks over the whole toolkit, one
// report line each. Run with --criterion N for a single check; exit status
// is nonzero when anything fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "framelab/framelab.hpp"

#include "../support/random_templates.hpp"

using namespace framelab;

namespace {

struct Checker {
    long long cases = 0;
    long long failures = 0;
    std::string first;

    void expect(bool cond, const std::string& what) {
        ++cases;
        if (!cond) {
            ++failures;
            if (first.empty()) first = what;
        }
    }
};

long long binom2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string fmt(long long v) { return std::to_string(v); }

// --- 1: constructed Dowling geometries are simple, spanning, and exactly
// extremal across primes, subgroups, and lift heights.
Checker criterion1() {
    Checker ck;
    for (int p : {2, 3, 5}) {
        PrimeField f(p);
        for (const SubgroupGamma& gamma : SubgroupGamma::all_subgroups(f)) {
            for (int t = 0; t <= 2; ++t) {
                for (int n = std::max(t, 1); n <= 7; ++n) {
                    RepresentedMatroid dg =
                        dowling({FrameClassParams(f, gamma, t), n, DowlingVariant::Plain, 0});
                    std::string tag = "p=" + fmt(p) + " |G|=" + fmt(gamma.size()) +
                                      " t=" + fmt(t) + " n=" + fmt(n);
                    long long want = extremal_f(p, gamma.size(), t, n);
                    ck.expect(static_cast<long long>(dg.size()) == want,
                              "size mismatch at " + tag + ": " + fmt(dg.size()) + " vs " +
                                  fmt(want));
                    ck.expect(dg.rank() == n, "rank mismatch at " + tag);
                    ck.expect(is_simple(dg), "not simple at " + tag);
                }
            }
        }
    }
    return ck;
}

// --- 2: the extremal function agrees with direct column enumeration and
// with the three closed forms.
Checker criterion2() {
    Checker ck;

    std::vector<std::pair<int, SubgroupGamma>> classes;
    {
        PrimeField f2(2), f3(3), f5(5), f7(7);
        classes.push_back({2, SubgroupGamma::trivial(f2)});
        classes.push_back({3, SubgroupGamma::trivial(f3)});
        classes.push_back({3, SubgroupGamma::full(f3)});
        classes.push_back({5, SubgroupGamma::squares(f5)});
        classes.push_back({5, SubgroupGamma::full(f5)});
        classes.push_back({7, SubgroupGamma::of_order(f7, 3)});
    }
    for (const auto& [p, gamma] : classes) {
        PrimeField f(p);
        for (int t = 0; t <= 4; ++t)
            for (int n = std::max(t, 1); n <= 12; ++n) {
                Mat w = build_Wt(n, FrameClassParams(f, gamma, t));
                long long want = extremal_f(p, gamma.size(), t, n);
                ck.expect(static_cast<long long>(w.ncols()) == want,
                          "column count off at p=" + fmt(p) + " |G|=" + fmt(gamma.size()) +
                              " t=" + fmt(t) + " n=" + fmt(n));
            }
    }

    for (int t = 0; t <= 4; ++t)
        for (int n = std::max(t, 1); n <= 12; ++n) {
            long long pt2 = ipow(2, t);
            ck.expect(extremal_f(2, 1, t, n) == pt2 * binom2(n - t + 1) + pt2 - 1,
                      "binary closed form off at t=" + fmt(t) + " n=" + fmt(n));
            long long pt3 = ipow(3, t);
            ck.expect(extremal_f(3, 2, t, n) ==
                          pt3 * (n - t) * (n - t) + (pt3 - 1) / 2,
                      "ternary closed form off at t=" + fmt(t) + " n=" + fmt(n));
            for (int p : {3, 5, 7, 11, 13}) {
                long long ptp = ipow(p, t);
                long long g = (p - 1) / 2;
                ck.expect(extremal_f(p, static_cast<int>(g), t, n) ==
                              ptp * (g * binom2(n - t) + (n - t)) + (ptp - 1) / (p - 1),
                          "half-group closed form off at p=" + fmt(p) + " t=" + fmt(t) +
                              " n=" + fmt(n));
            }
        }
    return ck;
}

// --- 3: the three witness constructions replay with exactly the advertised
// sizes and geometry targets.
Checker criterion3() {
    Checker ck;
    auto basic = [&ck](const WitnessReport& w) {
        ck.expect(w.pass, w.name + ": report does not pass");
        ck.expect(w.host_simple, w.name + ": host not simple");
        ck.expect(w.iso_verified, w.name + ": geometry target not verified");
        ck.expect(w.nonmembership_holds, w.name + ": host density not past the frame bound");
        ck.expect(w.host_size == w.host_size_expected, w.name + ": host size drifted");
        ck.expect(w.minor_epsilon == w.minor_epsilon_expected, w.name + ": minor size drifted");
    };

    WitnessReport a = witness_techtwo(0);
    basic(a);
    ck.expect(a.host_size == 9, "binary t=0 host should have 9 elements");
    ck.expect(a.minor_epsilon == 8, "binary t=0 target should have 8 points");
    ck.expect(a.minor_rank == 4, "binary t=0 target should have rank 4");

    WitnessReport b = witness_techtwo(1);
    basic(b);
    ck.expect(b.host_size == 17, "binary t=1 host should have 17 elements");
    ck.expect(b.minor_epsilon == 16, "binary t=1 target should have 16 points");

    WitnessReport c = witness_techthree(0);
    basic(c);
    ck.expect(c.minor_epsilon == 9, "ternary t=0 target should have 9 points");
    ck.expect(c.minor_rank == 3, "ternary t=0 target should have rank 3");

    WitnessReport d = witness_techodd(5, 0);
    basic(d);
    ck.expect(d.host_size == extremal_f(5, 2, 0, 3) + 1, "GF(5) host should be one past extremal");
    ck.expect(d.minor_epsilon == 6, "GF(5) contracted target should have 6 points");

    WitnessReport e = witness_techodd(7, 0);
    basic(e);
    ck.expect(e.host_size == extremal_f(7, 3, 0, 3) + 1, "GF(7) host should be one past extremal");
    ck.expect(e.minor_epsilon == 8, "GF(7) contracted target should have 8 points");
    return ck;
}

// --- 4: exhaustive extremal searches at small rank, including the rank-4
// value that exceeds the asymptotic one.
Checker criterion4() {
    Checker ck;
    PrimeField f(2);
    SubgroupGamma triv = SubgroupGamma::trivial(f);

    ExtremalResult r3 = max_simple_no_minor(2, 3, pg(2, f));
    ck.expect(r3.max_size == 6, "rank-3 plane-free maximum should be 6, got " + fmt(r3.max_size));
    ck.expect(r3.exhaustive, "rank-3 scan should be exhaustive");
    ck.expect(r3.extremal.size() == 1, "rank-3 extremal example should be unique");
    RepresentedMatroid k4 = dowling({FrameClassParams(f, triv, 0), 3, DowlingVariant::Plain, 0});
    ck.expect(!r3.extremal.empty() &&
                  is_isomorphic(r3.extremal[0], k4, IsoMode::Abstract).has_value(),
              "rank-3 extremal example should be the rank-3 trivial-group geometry");

    ExtremalResult r4 = max_simple_no_minor(2, 4, pg(2, f));
    ck.expect(r4.max_size == 10, "rank-4 plane-free maximum should be 10, got " + fmt(r4.max_size));
    ck.expect(r4.exhaustive, "rank-4 scan should be exhaustive");
    ck.expect(r4.extremal.size() == 1, "rank-4 extremal example should be unique");
    RepresentedMatroid k5 = dowling({FrameClassParams(f, triv, 0), 4, DowlingVariant::Plain, 0});
    ck.expect(!r4.extremal.empty() &&
                  is_isomorphic(r4.extremal[0], k5, IsoMode::Abstract).has_value(),
              "rank-4 extremal example should be the rank-4 trivial-group geometry");

    // Excluding the affine cube at rank 4 allows 11 points: one more than the
    // asymptotic value, which only binds at large rank.
    ExtremalResult ra = max_simple_no_minor(2, 4, ag(3, f));
    ck.expect(ra.max_size == 11, "rank-4 cube-free maximum should be 11, got " + fmt(ra.max_size));
    ck.expect(ra.exhaustive, "rank-4 cube-free scan should be exhaustive");
    return ck;
}

std::vector<FrameTemplate> acceptance_corpus(int p) {
    return testsupport::sample_corpus(9000 + p, 50, p);
}

// --- 5: every reduction pass preserves the conforming-set semantics on a
// fixed enumeration window, and the pipeline lands on a reduced template.
Checker criterion5() {
    Checker ck;
    for (int p : {2, 3}) {
        std::vector<FrameTemplate> corpus = acceptance_corpus(p);
        ck.expect(corpus.size() == 50, "corpus for p=" + fmt(p) + " undersized");
        for (size_t i = 0; i < corpus.size(); ++i) {
            const FrameTemplate& phi = corpus[i];
            std::string tag = "p=" + fmt(p) + " template#" + fmt(static_cast<long long>(i));
            auto [reduced, trace] = reduce(phi);
            ck.expect(is_reduced(reduced), tag + ": pipeline output not reduced");
            if (trace.empty()) continue;
            std::vector<RepresentedMatroid> prev = enumerate_conforming(trace[0].before, 6, 4);
            const FrameTemplate* expect_before = &phi;
            for (const ReductionPass& pass : trace) {
                ck.expect(pass.before == *expect_before, tag + ": trace chain broken");
                std::vector<RepresentedMatroid> next = enumerate_conforming(pass.after, 6, 4);
                ck.expect(same_conforming_sets(prev, next),
                          tag + ": pass '" + pass.name + "' changed the conforming set");
                prev = std::move(next);
                expect_before = &pass.after;
            }
        }
    }
    return ck;
}

// --- 6: density bounds hold for every enumerated conforming matroid, its
// dual, and a population of cosimple frame instances.
Checker criterion6() {
    Checker ck;
    for (int p : {2, 3}) {
        std::vector<FrameTemplate> corpus = acceptance_corpus(p);
        for (size_t i = 0; i < corpus.size(); ++i) {
            const FrameTemplate& phi = corpus[i];
            std::string tag = "p=" + fmt(p) + " template#" + fmt(static_cast<long long>(i));
            for (const RepresentedMatroid& m : enumerate_conforming(phi, 6, 4)) {
                DensityCheck primal = density_bound_primal(phi, m);
                ck.expect(primal.holds, tag + ": primal bound violated (eps " +
                                            fmt(primal.eps) + " > " + fmt(primal.bound) + ")");
                DensityCheck co = density_bound_dual(phi, dual(m));
                ck.expect(co.holds, tag + ": dual bound violated (eps " + fmt(co.eps) + " > " +
                                        fmt(co.bound) + ")");
            }
        }
    }

    // Random gain graphs, kept when the dual is simple.
    std::mt19937_64 rng(6001);
    auto pick = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
    };
    int kept = 0;
    long long attempts = 0;
    while (kept < 200 && ++attempts < 50000) {
        int p = std::vector<int>{2, 3, 5}[pick(0, 2)];
        PrimeField f(p);
        std::vector<SubgroupGamma> groups = SubgroupGamma::all_subgroups(f);
        SubgroupGamma gamma = groups[pick(0, static_cast<int>(groups.size()) - 1)];
        int r = pick(2, 6);
        int m = r + pick(0, 2 * r);
        std::vector<Label> rows, cols;
        for (int i = 1; i <= r; ++i) rows.push_back("b" + fmt(i));
        for (int j = 1; j <= m; ++j) cols.push_back("e" + fmt(j));
        Mat frame(f, rows, cols);
        for (int j = 0; j < m; ++j) {
            int i = pick(0, r - 1);
            int scale = pick(1, p - 1);
            if (pick(0, 3) == 0 || r < 2) {
                frame.set(i, j, scale);
            } else {
                int k = pick(0, r - 2);
                if (k >= i) ++k;
                int g = gamma.elements()[pick(0, gamma.size() - 1)];
                frame.set(i, j, f.mul(scale, g));
                frame.set(k, j, f.neg(scale));
            }
        }
        CoframeReport rep = coframe_density_check(frame, gamma);
        if (!rep.cosimple) continue;
        ++kept;
        ck.expect(rep.holds, "cosimple frame instance #" + fmt(kept) + " too dense (eps " +
                                 fmt(rep.eps) + " > 3*" + fmt(rep.r) + ")");
    }
    ck.expect(kept == 200, "only gathered " + fmt(kept) + " cosimple frame instances");
    return ck;
}

// --- 7: constructive minor certificates replay against their hosts.
Checker criterion7() {
    Checker ck;

    std::vector<std::pair<int, SubgroupGamma>> combos;
    {
        PrimeField f3(3), f5(5), f7(7);
        combos.push_back({3, SubgroupGamma::trivial(f3)});
        combos.push_back({5, SubgroupGamma::squares(f5)});
        combos.push_back({7, SubgroupGamma::of_order(f7, 3)});
    }
    for (const auto& [p, gamma] : combos) {
        PrimeField f(p);
        for (int n : {3, 4}) {
            std::string tag = "scalar extension p=" + fmt(p) + " n=" + fmt(n);
            PrimesubfieldResult res = primesubfield_minor(n, f, gamma);
            ck.expect(!gamma.contains(res.x), tag + ": new ratio already in the group");
            ck.expect(res.pattern.rank() == n, tag + ": pattern rank drifted");
            ck.expect(static_cast<long long>(res.pattern.size()) ==
                          extremal_f(p, gamma.size(), 0, n) + 1,
                      tag + ": pattern size drifted");
            ck.expect(replay_minor(res.host, res.pattern, res.cert), tag + ": replay failed");
        }
    }

    PrimeField f2(2);
    FrameClassParams params(f2, SubgroupGamma::trivial(f2), 0);
    Mat w = build_W(f2, params.gamma, 15);
    std::vector<Label> rows = w.row_labels();
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 500; ++iter) {
        int weight = 3 + static_cast<int>(rng() % 13);
        std::vector<int> idx(rows.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::shuffle(idx.begin(), idx.end(), rng);
        Mat zcol(f2, rows, {"z"});
        for (int i = 0; i < weight; ++i) zcol.set(idx[i], 0, 1);
        RepresentedMatroid ext(w.hstack(zcol));

        std::string tag = "extension #" + fmt(iter);
        ExtensionMinorResult res = dowling_extension_minor(ext, 3, params);
        ck.expect(res.pattern.rank() == 3, tag + ": pattern rank drifted");
        ck.expect(res.pattern.size() == 7, tag + ": pattern size drifted");
        ck.expect(replay_minor(ext, res.pattern, res.cert), tag + ": replay failed");
    }
    return ck;
}

// --- 8: algebraic laws on random represented matroids.
Checker criterion8() {
    Checker ck;
    std::mt19937_64 rng(31337);
    auto random_matroid = [&rng]() {
        static const int primes[3] = {2, 3, 5};
        int p = primes[rng() % 3];
        PrimeField f(p);
        int r = 1 + static_cast<int>(rng() % 5);
        int m = 1 + static_cast<int>(rng() % 9);
        std::vector<Label> rows, cols;
        for (int i = 1; i <= r; ++i) rows.push_back("r" + fmt(i));
        for (int j = 1; j <= m; ++j) cols.push_back("e" + fmt(j));
        Mat a(f, rows, cols);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < m; ++j) a.set(i, j, static_cast<int>(rng() % p));
        return RepresentedMatroid(a);
    };
    auto random_subset = [&rng](const std::vector<Label>& ground) {
        std::vector<Label> out;
        for (const Label& e : ground)
            if (rng() & 1) out.push_back(e);
        return out;
    };

    for (int i = 0; i < 1000; ++i) {
        RepresentedMatroid m = random_matroid();
        ck.expect(dual(dual(m)) == m, "dual involution broke at instance " + fmt(i));
    }

    for (int i = 0; i < 1000; ++i) {
        RepresentedMatroid m = random_matroid();
        std::vector<Label> x, y;
        for (const Label& e : m.ground()) {
            uint64_t roll = rng() % 4;
            if (roll == 0) x.push_back(e);
            else if (roll == 1) y.push_back(e);
        }
        RepresentedMatroid a = delete_elements(contract_elements(m, x), y);
        RepresentedMatroid b = contract_elements(delete_elements(m, y), x);
        ck.expect(a == b, "contract/delete commutation broke at instance " + fmt(i));
        ck.expect(contract_elements_fast(m, x) == contract_elements(m, x),
                  "fast contraction disagreed at instance " + fmt(i));
    }

    for (int i = 0; i < 1000; ++i) {
        RepresentedMatroid m = random_matroid();
        std::vector<Label> a = random_subset(m.ground());
        ck.expect(lambda(m, a) == lambda(m, labels_minus(m.ground(), a)),
                  "connectivity symmetry broke at instance " + fmt(i));
    }

    for (int i = 0; i < 1000; ++i) {
        RepresentedMatroid m = random_matroid();
        std::vector<Label> a = random_subset(m.ground());
        std::vector<Label> b = random_subset(m.ground());
        std::set<Label> sa(a.begin(), a.end()), sb(b.begin(), b.end());
        std::vector<Label> uni, inter;
        for (const Label& e : m.ground()) {
            bool ina = sa.count(e) > 0, inb = sb.count(e) > 0;
            if (ina || inb) uni.push_back(e);
            if (ina && inb) inter.push_back(e);
        }
        ck.expect(m.rank_of(uni) + m.rank_of(inter) <= m.rank_of(a) + m.rank_of(b),
                  "rank submodularity broke at instance " + fmt(i));
    }

    for (int i = 0; i < 1000; ++i) {
        RepresentedMatroid m = random_matroid();
        SimplifyResult s = simplify(m);
        SimplifyResult ss = simplify(s.matroid);
        ck.expect(ss.matroid == s.matroid, "simplification not idempotent at instance " + fmt(i));
        ck.expect(s.epsilon == epsilon(m), "point count disagreed at instance " + fmt(i));
        ck.expect(static_cast<long long>(s.matroid.size()) == s.epsilon,
                  "simplification size off at instance " + fmt(i));
    }
    return ck;
}

const char* kLabels[9] = {
    "",
    "dowling geometries realize the extremal size",
    "closed forms agree with direct enumeration",
    "witness constructions replay exactly",
    "exhaustive extremal search at small rank",
    "template reduction preserves conforming sets",
    "density bounds hold across the corpus",
    "constructive minor certificates replay",
    "algebraic law suite",
};

Checker run_criterion(int id) {
    switch (id) {
        case 1: return criterion1();
        case 2: return criterion2();
        case 3: return criterion3();
        case 4: return criterion4();
        case 5: return criterion5();
        case 6: return criterion6();
        case 7: return criterion7();
        case 8: return criterion8();
    }
    throw std::invalid_argument("criterion id must be 1..8");
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
            if (only < 1 || only > 8) {
                std::cerr << "criterion must be 1..8\n";
                return 2;
            }
        } else {
            std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
            return 2;
        }
    }

    int bad = 0;
    for (int id = 1; id <= 8; ++id) {
        if (only != 0 && id != only) continue;
        auto start = std::chrono::steady_clock::now();
        Checker ck;
        std::string error;
        try {
            ck = run_criterion(id);
        } catch (const std::exception& ex) {
            ck.failures = std::max<long long>(ck.failures, 1);
            error = ex.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[64];
        std::snprintf(timing, sizeof(timing), "%.1fs", secs);
        if (ck.failures == 0) {
            std::cout << "[PASS] criterion " << id << ": " << kLabels[id] << " (" << ck.cases
                      << " checks, " << timing << ")\n";
        } else {
            ++bad;
            std::cout << "[FAIL] criterion " << id << ": " << kLabels[id] << " (" << ck.failures
                      << "/" << ck.cases << " checks failed";
            if (!ck.first.empty()) std::cout << "; first: " << ck.first;
            if (!error.empty()) std::cout << "; exception: " << error;
            std::cout << ", " << timing << ")\n";
        }
    }
    return bad == 0 ? 0 : 1;
}

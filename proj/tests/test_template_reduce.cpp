#include <catch2/catch_amalgamated.hpp>

#include "framelab/template_enum.hpp"
#include "framelab/template_reduce.hpp"
#include "support/random_templates.hpp"

using namespace framelab;

namespace {

Subspace span_of(const PrimeField& f, const std::vector<Label>& cols,
                 const std::vector<std::vector<int>>& rows) {
    std::vector<Label> rl;
    for (size_t i = 0; i < rows.size(); ++i) rl.push_back("s" + std::to_string(i + 1));
    Mat m(f, rl, cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) m.set(i, j, rows[i][j]);
    return Subspace::from_rows(m);
}

bool passes_preserve(const FrameTemplate& phi, int max_ground, int max_rows) {
    auto [reduced, trace] = reduce(phi);
    if (!is_reduced(reduced)) return false;
    for (const ReductionPass& pass : trace) {
        if (!same_conforming_sets(enumerate_conforming(pass.before, max_ground, max_rows),
                                  enumerate_conforming(pass.after, max_ground, max_rows)))
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("contracting consumed rows and columns") {
    PrimeField f(3);
    Mat a1(f, {"x1", "x2"}, {"c", "y0"});
    a1.set_entry("x1", "c", 2);
    a1.set_entry("x1", "y0", 1);
    a1.set_entry("x2", "y0", 2);
    FrameTemplate phi(SubgroupGamma::trivial(f), {"c"}, {"x1", "x2"}, {"y0"}, {}, a1,
                      Subspace::zero(f, {"c", "y0"}), span_of(f, {"x1", "x2"}, {{0, 1}}));

    FrameTemplate out = contract_template(phi, {"x1"}, {"c"});
    CHECK(out.c().empty());
    CHECK(out.x() == std::vector<Label>{"x2"});
    CHECK(out.a1().entry("x2", "y0") == 2);
    CHECK(out.lambda().dim() == 1);
    CHECK(same_conforming_sets(enumerate_conforming(phi, 4, 3),
                               enumerate_conforming(out, 4, 3)));

    FrameTemplate live_delta(SubgroupGamma::trivial(f), {"c"}, {"x1", "x2"}, {"y0"}, {}, a1,
                             span_of(f, {"c", "y0"}, {{1, 0}}), Subspace::zero(f, {"x1", "x2"}));
    CHECK_THROWS_AS(contract_template(live_delta, {"x1"}, {"c"}), std::invalid_argument);

    Mat busy = a1;
    busy.set_entry("x2", "c", 1);
    FrameTemplate kept_row(SubgroupGamma::trivial(f), {"c"}, {"x1", "x2"}, {"y0"}, {}, busy,
                           Subspace::zero(f, {"c", "y0"}), Subspace::zero(f, {"x1", "x2"}));
    CHECK_THROWS_AS(contract_template(kept_row, {"x1"}, {"c"}), std::invalid_argument);

    Mat sparse = a1;
    sparse.set_entry("x1", "c", 0);
    FrameTemplate rankless(SubgroupGamma::trivial(f), {"c"}, {"x1", "x2"}, {"y0"}, {}, sparse,
                           Subspace::zero(f, {"c", "y0"}), Subspace::zero(f, {"x1", "x2"}));
    CHECK_THROWS_AS(contract_template(rankless, {"x1"}, {"c"}), std::invalid_argument);

    CHECK_THROWS_AS(contract_template(phi, {"zz"}, {}), std::invalid_argument);
}

TEST_CASE("row operations on the dense block") {
    PrimeField f(3);
    Mat a1(f, {"x1", "x2"}, {"u1"});
    a1.set_entry("x1", "u1", 1);
    a1.set_entry("x2", "u1", 2);
    FrameTemplate phi(SubgroupGamma::trivial(f), {}, {"x1", "x2"}, {"u1"}, {}, a1,
                      Subspace::zero(f, {"u1"}), span_of(f, {"x1", "x2"}, {{1, 0}}));

    Mat u(f, {"x1", "x2"}, {"x1", "x2"});
    u.set_entry("x1", "x2", 1);
    u.set_entry("x2", "x1", 1);
    FrameTemplate out = apply_unitary(phi, u);
    CHECK(out.a1().entry("x1", "u1") == 2);
    CHECK(out.a1().entry("x2", "u1") == 1);
    CHECK(out.lambda().contains({0, 1}));
    CHECK_FALSE(out.lambda().contains({1, 0}));
    CHECK(same_conforming_sets(enumerate_conforming(phi, 4, 3),
                               enumerate_conforming(out, 4, 3)));

    Mat singular(f, {"x1", "x2"}, {"x1", "x2"});
    singular.set_entry("x1", "x1", 1);
    singular.set_entry("x2", "x2", 0);
    CHECK_THROWS_AS(apply_unitary(phi, singular), std::invalid_argument);
    Mat mislabeled(f, {"a", "b"}, {"a", "b"});
    CHECK_THROWS_AS(apply_unitary(phi, mislabeled), std::invalid_argument);
}

TEST_CASE("projecting Delta off the dense row space") {
    PrimeField f(3);
    Mat a1(f, {"x1", "x2"}, {"u1", "u2"});
    a1.set_entry("x1", "u1", 1);
    FrameTemplate phi(SubgroupGamma::trivial(f), {}, {"x1", "x2"}, {"u1", "u2"}, {}, a1,
                      span_of(f, {"u1", "u2"}, {{1, 1}}), span_of(f, {"x1", "x2"}, {{0, 1}}));

    FrameTemplate out = project_delta(phi, {"x1"});
    CHECK(out.delta().contains({0, 1}));
    CHECK_FALSE(out.delta().contains({1, 1}));
    CHECK(out.a1() == phi.a1());
    CHECK(same_conforming_sets(enumerate_conforming(phi, 4, 3),
                               enumerate_conforming(out, 4, 3)));

    CHECK_THROWS_AS(project_delta(phi, {"x2"}), std::invalid_argument);
}

TEST_CASE("coordinatizing Delta on fresh pivot columns") {
    PrimeField f(3);
    Mat a1(f, {"x1"}, {"u1", "u2"});
    a1.set_entry("x1", "u1", 1);
    a1.set_entry("x1", "u2", 2);
    FrameTemplate phi(SubgroupGamma::trivial(f), {}, {"x1"}, {"u1", "u2"}, {}, a1,
                      span_of(f, {"u1", "u2"}, {{1, 1}}), Subspace::zero(f, {"x1"}));

    FrameTemplate out = normalize_delta(phi);
    CHECK(out.c() == std::vector<Label>{"c#1"});
    CHECK(out.x() == std::vector<Label>{"x#1", "x1"});
    CHECK(out.a1().entry("x#1", "u1") == 1);
    CHECK(out.a1().entry("x#1", "u2") == 1);
    CHECK(out.a1().entry("x#1", "c#1") == 1);
    CHECK(out.delta().contains({1, 0, 0}));  // unit on c#1 in (C, Y0) order
    CHECK(out.delta().dim() == 1);
    CHECK(same_conforming_sets(enumerate_conforming(phi, 4, 3),
                               enumerate_conforming(out, 4, 3)));

    FrameTemplate untouched(SubgroupGamma::trivial(f), {}, {"x1"}, {"u1", "u2"}, {}, a1,
                            Subspace::zero(f, {"u1", "u2"}), Subspace::zero(f, {"x1"}));
    CHECK(normalize_delta(untouched) == untouched);
}

TEST_CASE("reduced-form predicates") {
    PrimeField f(3);
    CHECK(is_reduced(trivial_template(f, SubgroupGamma::trivial(f))));
    FrameTemplate lift = frame_class_template(f, SubgroupGamma::full(f), 2);
    auto part = reduced_partition(lift);
    REQUIRE(part.has_value());
    CHECK(part->first == std::vector<Label>{"x1", "x2"});
    CHECK(part->second.empty());

    Mat a1(f, {"x1"}, {"u1", "u2"});
    a1.set_entry("x1", "u1", 1);
    a1.set_entry("x1", "u2", 2);
    FrameTemplate dense(SubgroupGamma::trivial(f), {}, {"x1"}, {"u1", "u2"}, {}, a1,
                        Subspace::zero(f, {"u1", "u2"}), Subspace::zero(f, {"x1"}));
    auto dp = reduced_partition(dense);
    REQUIRE(dp.has_value());
    CHECK(dp->first.empty());
    CHECK(dp->second == std::vector<Label>{"x1"});

    FrameTemplate diag(SubgroupGamma::trivial(f), {}, {"x1"}, {"u1", "u2"}, {}, a1,
                       span_of(f, {"u1", "u2"}, {{1, 1}}), Subspace::zero(f, {"x1"}));
    CHECK_FALSE(is_y_reduced(diag));  // Delta leaks onto Y coordinates
    CHECK(is_reduced(diag));          // but it factors cleanly, with C empty

    Mat a2(f, {"x1", "x2"}, {"u1"});
    FrameTemplate slanted(SubgroupGamma::trivial(f), {}, {"x1", "x2"}, {"u1"}, {}, a2,
                          Subspace::zero(f, {"u1"}), span_of(f, {"x1", "x2"}, {{1, 1}}));
    CHECK_FALSE(is_reduced(slanted));  // Lambda is not a coordinate space
}

TEST_CASE("full reduction pipeline on random templates") {
    for (int p : {2, 3}) {
        std::vector<FrameTemplate> corpus = testsupport::sample_corpus(902 + p, 4, p, 300000);
        for (const FrameTemplate& phi : corpus) {
            CHECK(passes_preserve(phi, 5, 3));
            auto [red, trace] = reduce(phi);
            auto [again, trace2] = reduce(red);
            CHECK(trace2.empty());
            CHECK(again == red);
        }
    }
}

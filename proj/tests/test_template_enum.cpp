#include <catch2/catch_amalgamated.hpp>

#include "framelab/search.hpp"
#include "framelab/template_enum.hpp"
#include "framelab/template_reduce.hpp"

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

// One-column Y1 template whose bottom rows range over multiples of e_w1.
FrameTemplate shift_template(const PrimeField& f) {
    return FrameTemplate(SubgroupGamma::trivial(f), {}, {}, {}, {"w1"}, Mat(f, {}, {"w1"}),
                         span_of(f, {"w1"}, {{1}}), Subspace::zero(f, {}));
}

}  // namespace

TEST_CASE("enumeration of plain frame matroids on a small ground set") {
    for (int p : {2, 3}) {
        PrimeField f(p);
        FrameTemplate triv = trivial_template(f, SubgroupGamma::trivial(f));
        std::vector<RepresentedMatroid> out = enumerate_conforming(triv, 3, 3);
        CHECK(out.size() == 15);

        for (size_t i = 0; i < out.size(); ++i)
            for (size_t j = i + 1; j < out.size(); ++j)
                CHECK_FALSE(is_isomorphic(out[i], out[j], IsoMode::Represented).has_value());
        for (size_t i = 1; i < out.size(); ++i) CHECK(out[i - 1].size() <= out[i].size());
    }
}

TEST_CASE("Y0 columns stay in every conforming matroid") {
    PrimeField f(3);
    FrameTemplate keep(SubgroupGamma::trivial(f), {}, {}, {"u1"}, {}, Mat(f, {}, {"u1"}),
                       span_of(f, {"u1"}, {{1}}), Subspace::zero(f, {}));
    std::vector<RepresentedMatroid> out = enumerate_conforming(keep, 1, 2);
    REQUIRE(out.size() == 2);  // u1 as a loop, u1 as a point
    CHECK(out[0].rank_of({"u1"}) == 0);
    CHECK(out[1].rank_of({"u1"}) == 1);

    CHECK(enumerate_conforming(keep, 0, 2).empty());  // no room for Y0
}

TEST_CASE("candidate count prediction is exact") {
    PrimeField f(2);
    FrameTemplate phi = shift_template(f);
    const long long cost = conforming_enumeration_cost(phi, 2, 2);
    CHECK(cost == 107);

    EnumerateOptions exact;
    exact.budget = cost;
    // Every GF(2) matroid on at most two elements conforms here: empty, loop,
    // point, two loops, loop plus point, a parallel pair, two independent.
    std::vector<RepresentedMatroid> out = enumerate_conforming(phi, 2, 2, exact);
    CHECK(out.size() == 7);

    EnumerateOptions tight;
    tight.budget = cost - 1;
    CHECK_THROWS_AS(enumerate_conforming(phi, 2, 2, tight), BudgetExceeded);

    FrameTemplate triv = trivial_template(f, SubgroupGamma::trivial(f));
    const long long tcost = conforming_enumeration_cost(triv, 3, 3);
    CHECK(tcost == 169);
    EnumerateOptions texact;
    texact.budget = tcost;
    CHECK(enumerate_conforming(triv, 3, 3, texact).size() == 15);
    texact.budget = tcost - 1;
    CHECK_THROWS_AS(enumerate_conforming(triv, 3, 3, texact), BudgetExceeded);
}

TEST_CASE("enumeration rejects out-of-range bounds") {
    PrimeField f(2);
    FrameTemplate triv = trivial_template(f, SubgroupGamma::trivial(f));
    CHECK_THROWS_AS(enumerate_conforming(triv, 9, 2), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_conforming(triv, -1, 2), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_conforming(triv, 3, -1), std::invalid_argument);
}

TEST_CASE("matching enumerations up to isomorphism") {
    PrimeField f(3);
    FrameTemplate triv = trivial_template(f, SubgroupGamma::trivial(f));
    std::vector<RepresentedMatroid> a = enumerate_conforming(triv, 2, 2);
    std::vector<RepresentedMatroid> b = a;
    std::reverse(b.begin(), b.end());
    CHECK(same_conforming_sets(a, b));
    b.pop_back();
    CHECK_FALSE(same_conforming_sets(a, b));
}

TEST_CASE("density bounds") {
    PrimeField f(2);
    SubgroupGamma triv = SubgroupGamma::trivial(f);
    FrameTemplate phi = trivial_template(f, triv);

    RepresentedMatroid dg = dowling({FrameClassParams(f, triv, 0), 4, DowlingVariant::Plain, 0});
    DensityCheck tightest = density_bound_primal(phi, dg);
    CHECK(tightest.bound == 10);
    CHECK(tightest.eps == 10);
    CHECK(tightest.holds);

    DensityCheck broken = density_bound_primal(phi, pg(3, f));
    CHECK_FALSE(broken.holds);  // the projective geometry exceeds the frame bound

    FrameTemplate lift2 = frame_class_template(f, triv, 2);
    Mat one(f, {"r1"}, {"a"});
    one.set(0, 0, 1);
    DensityCheck low = density_bound_primal(lift2, RepresentedMatroid(one));
    CHECK(low.bound == 1);  // below rank t the projective count takes over
    CHECK(low.holds);

    DensityCheck dual = density_bound_dual(phi, pg(1, f));
    CHECK(dual.bound == 7);
    CHECK(dual.eps == 3);
    CHECK(dual.holds);
}

TEST_CASE("subclass witness for the plain frame template") {
    PrimeField f(3);
    SubgroupGamma triv = SubgroupGamma::trivial(f);
    FrameTemplate phi = trivial_template(f, triv);

    Mat p0 = build_W(f, triv, 2);
    SubclassInput input{Mat(f, {}, p0.col_labels()), Mat(f, {}, p0.col_labels()), p0};
    SubclassWitness w = subclass_witness(phi, input);

    CHECK(w.pattern == RepresentedMatroid(p0));
    CHECK(w.cert.contracted == std::vector<Label>{"q#1"});
    CHECK(w.cert.deleted.empty());
    CHECK(respects(w.host, phi).has_value());
    CHECK(conforming_matroid(w.host, w.shift, phi) == w.conforming);
    CHECK(replay_minor(w.conforming, w.pattern, w.cert));
}

TEST_CASE("subclass witness threads pivots through shifts and contractions") {
    PrimeField f(3);
    Mat a1(f, {"x1", "x2"}, {"c1", "u1", "w1"});
    a1.set_entry("x1", "c1", 1);
    a1.set_entry("x1", "u1", 2);
    a1.set_entry("x2", "w1", 1);
    FrameTemplate phi(SubgroupGamma::trivial(f), {"c1"}, {"x1", "x2"}, {"u1"}, {"w1"}, a1,
                      span_of(f, {"c1", "u1", "w1"}, {{1, 0, 0}}),
                      span_of(f, {"x1", "x2"}, {{1, 0}}));
    REQUIRE(is_reduced(phi));

    Mat p2(f, {"t1"}, {"f1", "f2"});
    p2.set_entry("t1", "f1", 1);
    p2.set_entry("t1", "f2", 1);
    Mat p1(f, {"m1"}, {"f1", "f2"});
    p1.set_entry("m1", "f2", 2);
    Mat p0(f, {"n1", "n2"}, {"f1", "f2"});
    p0.set_entry("n1", "f1", 2);
    p0.set_entry("n2", "f2", 1);

    SubclassWitness w = subclass_witness(phi, {p2, p1, p0});
    CHECK(w.shift.assignment == std::map<Label, Label>{{"z#1", "w1"}});
    CHECK(w.cert.contracted == std::vector<Label>{"q#1", "z#1"});
    CHECK(w.cert.deleted == std::vector<Label>{"u1"});
    CHECK(respects(w.host, phi).has_value());
    CHECK(replay_minor(w.conforming, w.pattern, w.cert));
    CHECK(w.pattern.rank() == 2);
    CHECK(has_minor(w.conforming, w.pattern).has_value());
}

TEST_CASE("subclass witness rejects malformed inputs") {
    PrimeField f(3);
    SubgroupGamma triv = SubgroupGamma::trivial(f);
    FrameTemplate phi = trivial_template(f, triv);
    Mat p0 = build_W(f, triv, 2);
    Mat empty(f, {}, p0.col_labels());

    Mat a1(f, {"x1", "x2"}, {"u1"});
    FrameTemplate unreduced(triv, {}, {"x1", "x2"}, {"u1"}, {}, a1,
                            Subspace::zero(f, {"u1"}), span_of(f, {"x1", "x2"}, {{1, 1}}));
    REQUIRE_FALSE(is_reduced(unreduced));
    CHECK_THROWS_AS(subclass_witness(unreduced, {empty, empty, p0}), std::invalid_argument);

    Mat extra_top(f, {"t1"}, p0.col_labels());
    CHECK_THROWS_AS(subclass_witness(phi, {extra_top, empty, p0}), std::invalid_argument);

    Mat other(f, {}, {"f1"});
    CHECK_THROWS_AS(subclass_witness(phi, {empty, other, p0}), std::invalid_argument);

    Mat heavy(f, {"n1", "n2", "n3"}, {"h1"});
    for (int i = 0; i < 3; ++i) heavy.set(i, 0, 1);
    Mat e2(f, {}, {"h1"});
    CHECK_THROWS_AS(subclass_witness(phi, {e2, e2, heavy}), std::invalid_argument);
}

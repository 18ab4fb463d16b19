#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "framelab/subspace.hpp"

using namespace framelab;

namespace {

Subspace span(const PrimeField& f, std::vector<Label> ambient,
              std::vector<std::vector<int>> rows) {
    std::vector<Label> rl;
    for (size_t i = 0; i < rows.size(); ++i) rl.push_back("s" + std::to_string(i));
    Mat m(f, rl, std::move(ambient));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < m.ncols(); ++j) m.set(i, j, rows[i][j]);
    return Subspace::from_rows(m);
}

}  // namespace

TEST_CASE("canonical basis makes equality syntactic") {
    PrimeField f(3);
    Subspace a = span(f, {"x", "y", "z"}, {{1, 1, 0}, {0, 1, 1}});
    Subspace b = span(f, {"x", "y", "z"}, {{2, 2, 0}, {1, 2, 1}});
    CHECK(a == b);
    CHECK(a.dim() == 2);
    Subspace c = span(f, {"x", "y", "z"}, {{1, 0, 0}});
    CHECK(a != c);
}

TEST_CASE("membership and subspace containment") {
    PrimeField f(5);
    Subspace s = span(f, {"a", "b", "c"}, {{1, 0, 2}, {0, 1, 3}});
    CHECK(s.contains({1, 1, 0}));
    CHECK_FALSE(s.contains({0, 0, 1}));
    CHECK(s.contains_subspace(span(f, {"a", "b", "c"}, {{2, 3, 3}})));
    CHECK(Subspace::full(f, {"a", "b"}).contains({4, 4}));
    CHECK(Subspace::zero(f, {"a", "b"}).dim() == 0);
}

TEST_CASE("sum and intersection satisfy the dimension formula") {
    std::mt19937_64 rng(3);
    for (int p : {2, 3, 5}) {
        PrimeField f(p);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Label> amb = {"e1", "e2", "e3", "e4"};
            auto rand_space = [&]() {
                std::vector<std::vector<int>> rows(1 + rng() % 3,
                                                   std::vector<int>(amb.size()));
                for (auto& r : rows)
                    for (auto& v : r) v = static_cast<int>(rng() % p);
                return span(f, amb, rows);
            };
            Subspace a = rand_space(), b = rand_space();
            Subspace s = a.sum(b), i = a.intersect(b);
            CHECK(s.dim() + i.dim() == a.dim() + b.dim());
            CHECK(s.contains_subspace(a));
            CHECK(a.contains_subspace(i));
            CHECK(a.is_skew(b) == (i.dim() == 0));
        }
    }
}

TEST_CASE("coordinate projection") {
    PrimeField f(3);
    Subspace s = span(f, {"a", "b", "c"}, {{1, 2, 0}, {0, 0, 1}});
    Subspace pab = s.project_coords({"a", "b"});
    CHECK(pab.ambient() == std::vector<Label>{"a", "b"});
    CHECK(pab.dim() == 1);
    CHECK(pab.contains({1, 2}));
    CHECK(s.project_coords({"c"}).dim() == 1);
}

TEST_CASE("linear image maps column vectors") {
    PrimeField f(5);
    Subspace s = span(f, {"x", "y"}, {{1, 2}});
    // T sends (x,y) to (y,x): image of span{(1,2)} is span{(2,1)}.
    Mat t(f, {"x", "y"}, {"x", "y"});
    t.set_entry("x", "y", 1);
    t.set_entry("y", "x", 1);
    Subspace img = s.linear_image(t);
    CHECK(img.contains({2, 1}));
    CHECK(img.dim() == 1);
}

TEST_CASE("canonical complement") {
    PrimeField f(3);
    Subspace s = span(f, {"a", "b", "c"}, {{1, 1, 2}});
    Subspace c = s.complement_canonical();
    CHECK(c.dim() == 2);
    CHECK(s.is_skew(c));
    CHECK(s.sum(c).dim() == 3);
}

TEST_CASE("complementary projection splits vectors") {
    PrimeField f(2);
    Subspace u = span(f, {"a", "b"}, {{1, 0}});
    Subspace w = span(f, {"a", "b"}, {{0, 1}});
    CHECK(complementary_projection(u, w, {1, 1}) == std::vector<uint8_t>{0, 1});
    CHECK(complementary_projection(u, w, {0, 1}) == std::vector<uint8_t>{0, 1});

    PrimeField f3(3);
    Subspace u3 = span(f3, {"a", "b"}, {{1, 1}});
    Subspace w3 = span(f3, {"a", "b"}, {{0, 1}});
    CHECK(complementary_projection(u3, w3, {2, 0}) == std::vector<uint8_t>{0, 1});

    // Not complementary: overlapping spans.
    CHECK_THROWS_AS(complementary_projection(u3, u3, {1, 1}), std::invalid_argument);
}

TEST_CASE("complementary projection is linear") {
    std::mt19937_64 rng(17);
    PrimeField f(5);
    std::vector<Label> amb = {"a", "b", "c"};
    Subspace u = span(f, amb, {{1, 0, 3}});
    Subspace w = span(f, amb, {{0, 1, 0}, {0, 0, 1}});
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<uint8_t> v1(3), v2(3), vs(3);
        for (int i = 0; i < 3; ++i) {
            v1[i] = static_cast<uint8_t>(rng() % 5);
            v2[i] = static_cast<uint8_t>(rng() % 5);
            vs[i] = static_cast<uint8_t>(f.add(v1[i], v2[i]));
        }
        auto p1 = complementary_projection(u, w, v1);
        auto p2 = complementary_projection(u, w, v2);
        auto ps = complementary_projection(u, w, vs);
        for (int i = 0; i < 3; ++i) CHECK(ps[i] == f.add(p1[i], p2[i]));
    }
}

TEST_CASE("enumerate lists every vector starting from zero") {
    PrimeField f(3);
    Subspace s = span(f, {"a", "b"}, {{1, 2}});
    auto all = s.enumerate();
    REQUIRE(all.size() == 3);
    CHECK(all[0] == std::vector<uint8_t>{0, 0});
    CHECK(Subspace::full(f, {"a", "b"}).enumerate().size() == 9);
}

TEST_CASE("coordinate support detection") {
    PrimeField f(2);
    Subspace boxy = span(f, {"a", "b", "c"}, {{1, 0, 0}, {0, 0, 1}});
    auto sup = boxy.coordinate_support();
    REQUIRE(sup.has_value());
    CHECK(*sup == std::vector<Label>{"a", "c"});
    Subspace diag = span(f, {"a", "b", "c"}, {{1, 1, 0}});
    CHECK_FALSE(diag.coordinate_support().has_value());
}

TEST_CASE("ambient extension keeps vectors") {
    PrimeField f(3);
    Subspace s = span(f, {"a", "b"}, {{1, 2}});
    Subspace e = s.extend_ambient({"a", "b", "z"});
    CHECK(e.ambient() == std::vector<Label>{"a", "b", "z"});
    CHECK(e.contains({1, 2, 0}));
    CHECK_FALSE(e.contains({1, 2, 1}));
}

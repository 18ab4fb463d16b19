#include <catch2/catch_amalgamated.hpp>

#include "framelab/frame_lemmas.hpp"

using namespace framelab;

namespace {

RepresentedMatroid extend_dowling(const FrameClassParams& params, int n,
                                  const std::vector<std::pair<Label, int>>& entries) {
    Mat w = build_Wt(n, params);
    Mat e(params.f, w.row_labels(), {"z"});
    for (const auto& [row, v] : entries) e.set_entry(row, "z", v);
    return RepresentedMatroid(w.hstack(e));
}

}  // namespace

TEST_CASE("line sizes") {
    PrimeField f2(2), f3(3);
    CHECK(max_line_size(pg(2, f2)) == 3);
    CHECK(max_line_size(ag(2, f3)) == 3);
    RepresentedMatroid dg = dowling(
        {FrameClassParams(f3, SubgroupGamma::full(f3), 0), 3, DowlingVariant::Plain, 0});
    CHECK(max_line_size(dg) == 4);
}

TEST_CASE("proper-subgroup geometries contain a scalar extension minor") {
    PrimeField f5(5);
    SubgroupGamma half5 = SubgroupGamma::squares(f5);
    PrimesubfieldResult r5 = primesubfield_minor(3, f5, half5);
    CHECK(r5.x == 2);
    CHECK_FALSE(half5.contains(r5.x));
    CHECK(r5.host.size() == 17);  // box extension one rank up
    CHECK(r5.pattern.size() == 10);
    CHECK(replay_minor(r5.host, r5.pattern, r5.cert));

    PrimeField f3(3);
    PrimesubfieldResult r3 = primesubfield_minor(3, f3, SubgroupGamma::trivial(f3));
    CHECK(r3.x == 2);
    CHECK(r3.cert.contracted == std::vector<Label>{"b1"});
    CHECK(replay_minor(r3.host, r3.pattern, r3.cert));

    PrimeField f7(7);
    SubgroupGamma cubes = SubgroupGamma::generated_by(f7, 2);
    PrimesubfieldResult r7 = primesubfield_minor(3, f7, cubes);
    CHECK(r7.x == 6);
    CHECK_FALSE(cubes.contains(r7.x));
    CHECK(replay_minor(r7.host, r7.pattern, r7.cert));

    CHECK_THROWS_AS(primesubfield_minor(3, f5, SubgroupGamma::full(f5)), std::invalid_argument);
    CHECK_THROWS_AS(primesubfield_minor(1, f5, half5), std::invalid_argument);
}

TEST_CASE("extension with a weight-2 column outside the group") {
    PrimeField f3(3);
    FrameClassParams params(f3, SubgroupGamma::trivial(f3), 0);
    RepresentedMatroid ext = extend_dowling(params, 4, {{"b1", 2}, {"b2", 2}});

    ExtensionMinorResult r = dowling_extension_minor(ext, 3, params);
    CHECK(r.outcome == ExtensionOutcome::XVariant);
    CHECK(r.x == 2);
    CHECK(r.pattern.size() == 7);
    CHECK(r.pattern.rank() == 3);
    CHECK(replay_minor(ext, r.pattern, r.cert));

    CHECK_THROWS_AS(dowling_extension_minor(ext, 5, params), std::invalid_argument);
    CHECK_THROWS_AS(dowling_extension_minor(ext, 1, params), std::invalid_argument);
}

TEST_CASE("a weight-2 column inside the group is parallel to a frame column") {
    PrimeField f3(3);
    FrameClassParams full(f3, SubgroupGamma::full(f3), 0);
    RepresentedMatroid ext = extend_dowling(full, 4, {{"b1", 2}, {"b2", 1}});
    CHECK_THROWS_AS(dowling_extension_minor(ext, 3, full), std::invalid_argument);
}

TEST_CASE("extension with a heavy column pigeonholes into a box minor") {
    PrimeField f2(2);
    FrameClassParams params(f2, SubgroupGamma::trivial(f2), 0);
    RepresentedMatroid ext = extend_dowling(
        params, 15, {{"b1", 1}, {"b2", 1}, {"b3", 1}, {"b4", 1}, {"b5", 1}});

    ExtensionMinorResult r = dowling_extension_minor(ext, 3, params);
    CHECK(r.outcome == ExtensionOutcome::BoxVariant);
    CHECK(r.pattern.size() == 7);
    CHECK(r.pattern.rank() == 3);
    CHECK(replay_minor(ext, r.pattern, r.cert));
    CHECK(is_isomorphic(r.pattern, pg(2, f2), IsoMode::Abstract).has_value());

    RepresentedMatroid small = extend_dowling(
        params, 14, {{"b1", 1}, {"b2", 1}, {"b3", 1}, {"b4", 1}, {"b5", 1}});
    CHECK_THROWS_AS(dowling_extension_minor(small, 3, params), std::invalid_argument);
}

TEST_CASE("extension recovery tolerates row operations and column scalings") {
    PrimeField f5(5);
    FrameClassParams params(f5, SubgroupGamma::squares(f5), 0);
    Mat w = build_Wt(4, params);
    Mat e(f5, w.row_labels(), {"z"});
    e.set_entry("b1", "z", 4);
    e.set_entry("b2", "z", 2);
    Mat m = w.hstack(e);
    m.axpy_row(0, 3, 2);
    m.axpy_row(3, 1, 1);
    m.scale_row(1, 2);
    for (size_t j = 0; j < m.ncols(); j += 3) m.scale_col(j, 3);
    RepresentedMatroid ext(m);

    ExtensionMinorResult r = dowling_extension_minor(ext, 3, params);
    CHECK(r.outcome == ExtensionOutcome::XVariant);
    CHECK_FALSE(params.gamma.contains(r.x));
    CHECK(replay_minor(ext, r.pattern, r.cert));
}

TEST_CASE("a non-extension input is rejected") {
    PrimeField f3(3);
    FrameClassParams params(f3, SubgroupGamma::trivial(f3), 0);
    CHECK_THROWS_AS(dowling_extension_minor(pg(2, f3), 2, params), std::invalid_argument);
}

TEST_CASE("binary witness report") {
    WitnessReport r0 = witness_techtwo(0);
    CHECK(r0.host_size == 9);
    CHECK(r0.host_simple);
    CHECK(r0.minor_epsilon == 8);
    CHECK(r0.minor_rank == 4);
    CHECK(r0.iso_verified);
    CHECK(r0.nonmembership_holds);
    CHECK(r0.pass);

    WitnessReport r1 = witness_techtwo(1);
    CHECK(r1.host_size == 17);
    CHECK(r1.minor_epsilon == 16);
    CHECK(r1.pass);

    CHECK_THROWS_AS(witness_techtwo(3), std::invalid_argument);
}

TEST_CASE("ternary witness report") {
    WitnessReport r = witness_techthree(0);
    CHECK(r.host_size == 10);
    CHECK(r.host_simple);
    CHECK(r.minor_epsilon == 9);
    CHECK(r.minor_rank == 3);
    CHECK(r.iso_verified);
    CHECK(r.nonmembership_holds);
    CHECK(r.pass);
}

TEST_CASE("odd-prime witness report") {
    WitnessReport r5 = witness_techodd(5, 0);
    CHECK(r5.host_size == 10);
    CHECK(r5.minor_epsilon == 6);
    CHECK(r5.minor_rank == 2);
    CHECK(r5.iso_verified);
    CHECK(r5.pass);

    WitnessReport r7 = witness_techodd(7, 0);
    CHECK(r7.host_size == 13);
    CHECK(r7.minor_epsilon == 8);
    CHECK(r7.pass);

    CHECK_THROWS_AS(witness_techodd(3, 0), std::invalid_argument);
}

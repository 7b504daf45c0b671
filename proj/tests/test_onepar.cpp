#include <doctest.h>

#include <random>

#include "mph/hilbert.hpp"
#include "mph/onepar.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mph;

TEST_CASE("restriction to lines") {
    // S(-3,0)/x2 restricted to the diagonal is the zero module
    Frame M = frame_of_presentation(fixtures::pres("s30.gpres"));
    OneParamModule N = restrict_to_line(M, LineMap(Degree({1, 1}), Degree({0, 0})));
    CHECK(N.is_zero());
    // a free module restricts to K[x] along any strictly positive direction
    FieldSpec q;
    Frame S = free_frame({Degree({0, 0})}, DegreeBox(Degree({2, 2})), q);
    OneParamModule NS = restrict_to_line(S, LineMap(Degree({2, 1}), Degree({0, 0})));
    Barcode bs = barcode(NS);
    REQUIRE(bs.bars.size() == 1);
    CHECK(bs.bars[0] == Bar{0, std::nullopt});
    // restriction preserves rank for positive directions
    Frame H1 = homology_frame(fixtures::complex("fig2.mfsc"), 1);
    OneParamModule NH = restrict_to_line(H1, LineMap(Degree({1, 1}), Degree({0, 0})));
    CHECK(barcode(NH).infinite_count() == 1);
    CHECK_THROWS_AS(LineMap(Degree({0, 0}), Degree({0, 0})), parse_error);
}

TEST_CASE("restriction to paths") {
    Frame H1 = homology_frame(fixtures::complex("fig2.mfsc"), 1);
    // constant path: the module at one degree with identity steps
    OneParamModule C = restrict_to_path(H1, MonotonePath({Degree({1, 2})}));
    CHECK(C.dims == std::vector<int>{2});
    // sampling a line gives the same barcode as the line restriction
    LineMap l(Degree({1, 1}), Degree({0, 0}));
    std::vector<Degree> samples;
    for (int i = 0; i <= 4; ++i) samples.push_back(l.at(i));
    CHECK(barcode(restrict_to_path(H1, MonotonePath(samples))) ==
          barcode(restrict_to_line(H1, l)));
    // the L-shaped probe through (2,0) sees the sphere class die at step 2
    Frame S2 = homology_frame(fixtures::complex("sphere.mfsc"), 1);
    MonotonePath L({Degree({0, 0}), Degree({1, 0}), Degree({2, 0}), Degree({2, 1}), Degree({2, 2})});
    Barcode bl = barcode(restrict_to_path(S2, L));
    REQUIRE(bl.bars.size() == 1);
    CHECK(bl.bars[0] == Bar{0, 2});
    CHECK_THROWS_AS(MonotonePath({Degree({1, 0}), Degree({0, 1})}), parse_error);
    CHECK_THROWS_AS(MonotonePath({Degree({1, 0}), Degree({1, 0})}), parse_error);
}

TEST_CASE("diagonal tensor reductions of the worked examples") {
    Barcode bn = barcode(diagonal_tensor(fixtures::pres("lw-N.gpres")));
    CHECK(bn.bars == std::vector<Bar>{{1, std::nullopt}, {1, std::nullopt}});
    Barcode bm = barcode(diagonal_tensor(fixtures::pres("lw-M.gpres")));
    CHECK(bm.bars == std::vector<Bar>{{1, 2}, {1, std::nullopt}, {2, std::nullopt}});
    Barcode bs = barcode(diagonal_tensor(fixtures::pres("s30.gpres")));
    CHECK(bs.bars == std::vector<Bar>{{3, 4}});
}

TEST_CASE("barcode of the one-parameter example") {
    Frame M = frame_of_presentation(fixtures::pres("e43.gpres"));
    Barcode bc = barcode(one_param_of_frame(M));
    CHECK(bc.bars == std::vector<Bar>{{0, 1}, {1, 3}, {2, std::nullopt}, {3, std::nullopt}});
    OneParamModule zero;
    zero.field = FieldSpec::rationals();
    zero.dims = {0, 0};
    zero.steps = {Matrix(0, 0, zero.field)};
    CHECK(barcode(zero).bars.empty());
}

TEST_CASE("rank is preserved by positive-direction restriction and by the diagonal") {
    std::mt19937 rng(51);
    for (int t = 0; t < 60; ++t) {
        int r = 2 + static_cast<int>(rng() % 2);
        GradedModulePresentation P = oracle::random_presentation(rng, r, FieldSpec::rationals());
        Frame M = frame_of_presentation(P);
        long long rk = rank_of(M);
        std::vector<int> dir(static_cast<std::size_t>(r)), off(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) {
            dir[static_cast<std::size_t>(i)] = 1 + static_cast<int>(rng() % 2);
            off[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 2);
        }
        OneParamModule N = restrict_to_line(M, LineMap(Degree(dir), Degree(off)));
        CHECK(static_cast<long long>(barcode(N).infinite_count()) == rk);
        CHECK(static_cast<long long>(barcode(diagonal_tensor(P)).infinite_count()) == rk);
    }
}

TEST_CASE("transports are independent of the staircase path") {
    std::mt19937 rng(52);
    Frame H1 = homology_frame(fixtures::complex("kprime.mfsc"), 1);
    const DegreeBox& box = H1.box();
    for (int t = 0; t < 40; ++t) {
        Degree u = box.degree(rng() % box.size());
        Degree v = join(u, box.degree(rng() % box.size()));
        // walk from u to v along a random shuffled order of unit steps
        Matrix direct = H1.transport(u, v);
        std::vector<int> moves;
        for (int i = 0; i < box.r(); ++i)
            for (int k = 0; k < v[i] - u[i]; ++k) moves.push_back(i);
        std::shuffle(moves.begin(), moves.end(), rng);
        Matrix walked = Matrix::identity(static_cast<std::size_t>(H1.dim_at(u)), H1.field());
        Degree pos = u;
        for (int i : moves) {
            walked = H1.step(pos, i) * walked;
            pos[i] += 1;
        }
        CHECK(walked == direct);
    }
}

TEST_CASE("barcode reassembles the Hilbert function of the restriction") {
    std::mt19937 rng(53);
    for (int t = 0; t < 30; ++t) {
        GradedModulePresentation P = oracle::random_presentation(rng, 2, FieldSpec::rationals());
        Frame M = frame_of_presentation(P);
        OneParamModule N = restrict_to_line(M, LineMap(Degree({1, 1}), Degree({0, 0})));
        Barcode bc = barcode(N);
        for (int i = 0; i <= N.stabilization_index() + 2; ++i) CHECK(bc.dim_at(i) == N.dim_at(i));
    }
}

TEST_CASE("pipeline barcode equals the classic reduction on one-parameter filtrations") {
    std::mt19937 rng(54);
    for (int t = 0; t < 100; ++t) {
        oracle::OneParFiltration F = oracle::random_filtration(rng, 4 + static_cast<int>(rng() % 3), 4);
        MultifilteredComplex K = oracle::to_mfsc(F, FieldSpec::rationals());
        for (int i = 0; i <= 1; ++i) {
            Frame H = homology_frame(K, i);
            Barcode ours = barcode(one_param_of_frame(H));
            std::vector<Bar> classic = oracle::classic_barcode(F, i);
            CHECK(ours.bars == classic);
        }
    }
}

#include <doctest.h>

#include "hzreach/hybrid_zonotope.hpp"
#include "hzreach/json_io.hpp"
#include "hzreach/milp.hpp"
#include "support/oracle.hpp"
#include "support/testutil.hpp"

using namespace hzreach;
using namespace hzreach::testing;

namespace {

HybridZonotope interval_hz(double lo, double hi)
{
    return Box::interval(lo, hi).to_hz();
}

HybridZonotope unit_square()
{
    Vec lb(2), ub(2);
    lb << -1, -1;
    ub << 1, 1;
    return Box(lb, ub).to_hz();
}

// PReLU branch segments over [-alpha, beta] (left branch slope a).
HybridZonotope prelu_left_segment(double a, double alpha)
{
    Mat Gc(2, 1);
    Gc << alpha / 2, alpha * a / 2;
    Vec c(2);
    c << -alpha / 2, -alpha * a / 2;
    return HybridZonotope(Gc, Mat::Zero(2, 0), c, Mat::Zero(0, 1),
                          Mat::Zero(0, 0), Vec::Zero(0));
}

HybridZonotope prelu_right_segment(double beta)
{
    Mat Gc(2, 1);
    Gc << beta / 2, beta / 2;
    Vec c(2);
    c << beta / 2, beta / 2;
    return HybridZonotope(Gc, Mat::Zero(2, 0), c, Mat::Zero(0, 1),
                          Mat::Zero(0, 0), Vec::Zero(0));
}

}  // namespace

TEST_CASE("linear_map identity leaves fields unchanged")
{
    TestRng rng(11);
    HybridZonotope Z = random_hz(rng, 3, 4, 2, 2);
    HybridZonotope Y = linear_map(Mat::Identity(3, 3), Z);
    CHECK(approx_equal(Y.Gc(), Z.Gc(), 0.0));
    CHECK(approx_equal(Y.Gb(), Z.Gb(), 0.0));
    CHECK(approx_equal(Y.c(), Z.c(), 0.0));
    CHECK(approx_equal(Y.Ac(), Z.Ac(), 0.0));
    CHECK(approx_equal(Y.Ab(), Z.Ab(), 0.0));
    CHECK(approx_equal(Y.b(), Z.b(), 0.0));
}

TEST_CASE("linear_map zero matrix collapses to the origin")
{
    HybridZonotope sq = unit_square();
    HybridZonotope Y = linear_map(Mat::Zero(2, 2), sq);
    for (Index d = 0; d < 2; ++d)
    {
        auto [lo, hi] = bounding_interval(Y, d);
        CHECK(lo == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(hi == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("linear_map scaling checked via membership")
{
    HybridZonotope sq = unit_square();
    Mat R = Mat::Zero(2, 2);
    R(0, 0) = 2.0;
    R(1, 1) = 2.0;
    HybridZonotope Y = linear_map(R, sq);
    Vec inside(2), outside(2);
    inside << 2.0, 2.0;
    outside << 2.1, 0.0;
    CHECK(contains_point(Y, inside));
    CHECK_FALSE(contains_point(Y, outside));
}

TEST_CASE("affine_map shifts the center")
{
    SUBCASE("identity with zero shift")
    {
        TestRng rng(12);
        HybridZonotope Z = random_hz(rng, 2, 3, 1, 1);
        HybridZonotope Y = affine_map(Mat::Identity(2, 2), Vec::Zero(2), Z);
        CHECK(approx_equal(Y.c(), Z.c(), 0.0));
    }
    SUBCASE("singleton moves to the offset")
    {
        HybridZonotope pt = HybridZonotope::point(Vec::Zero(2));
        Vec v(2);
        v << 1, 2;
        HybridZonotope Y = affine_map(Mat::Identity(2, 2), v, pt);
        CHECK(contains_point(Y, v));
        CHECK_FALSE(contains_point(Y, Vec(Vec::Zero(2))));
    }
    SUBCASE("interval scaled and shifted")
    {
        Mat R(1, 1);
        R << 1.0;
        Vec v(1);
        v << 3.0;
        HybridZonotope Y = affine_map(R, v, interval_hz(0, 1));
        auto [lo, hi] = bounding_interval(Y, 0);
        CHECK(lo == doctest::Approx(3.0).epsilon(1e-10));
        CHECK(hi == doctest::Approx(4.0).epsilon(1e-10));
    }
}

TEST_CASE("minkowski_sum identity element and interval sum")
{
    HybridZonotope sq = unit_square();
    HybridZonotope sum0 = minkowski_sum(sq, HybridZonotope::point(Vec::Zero(2)));
    for (const Vec& p : grid2d(-1.4, 1.4, -1.4, 1.4, 10))
        CHECK(contains_point(sum0, p) == contains_point(sq, p));

    HybridZonotope s = minkowski_sum(interval_hz(0, 1), interval_hz(0, 1));
    auto [lo, hi] = bounding_interval(s, 0);
    CHECK(lo == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(hi == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(s.num_cont_gens() == 2);
}

TEST_CASE("cartesian_product stacks blocks")
{
    HybridZonotope empty_dim = HybridZonotope::point(Vec::Zero(0));
    TestRng rng(13);
    HybridZonotope X = random_hz(rng, 2, 3, 1, 1);
    HybridZonotope P = cartesian_product(X, empty_dim);
    CHECK(P.dim() == 2);
    CHECK(approx_equal(P.Gc(), X.Gc(), 0.0));

    HybridZonotope XY = cartesian_product(interval_hz(0, 1), interval_hz(2, 3));
    auto [l0, h0] = bounding_interval(XY, 0);
    auto [l1, h1] = bounding_interval(XY, 1);
    CHECK(l0 == doctest::Approx(0.0));
    CHECK(h0 == doctest::Approx(1.0));
    CHECK(l1 == doctest::Approx(2.0));
    CHECK(h1 == doctest::Approx(3.0));
}

TEST_CASE("generalized_intersection")
{
    SUBCASE("self intersection is membership-equal")
    {
        HybridZonotope sq = unit_square();
        HybridZonotope Y = intersection(sq, sq);
        for (const Vec& p : grid2d(-1.3, 1.3, -1.3, 1.3, 8))
            CHECK(contains_point(Y, p) == contains_point(sq, p));
        CHECK(Y.num_constraints() == sq.num_constraints() * 2 + 2);
    }
    SUBCASE("overlapping intervals")
    {
        HybridZonotope Y = intersection(interval_hz(0, 2), interval_hz(1, 3));
        auto [lo, hi] = bounding_interval(Y, 0);
        CHECK(lo == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(hi == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("disjoint intervals are empty")
    {
        HybridZonotope Y = intersection(interval_hz(0, 1), interval_hz(2, 3));
        CHECK(check_empty(Y));
    }
}

TEST_CASE("union_pair reproduces the PReLU two-segment matrices")
{
    const double a = 0.1, alpha = 2.0, beta = 2.0;
    HybridZonotope H1 = prelu_left_segment(a, alpha);
    HybridZonotope H2 = prelu_right_segment(beta);
    HybridZonotope U = reduce_redundant_generators(union_pair(H1, H2));

    Mat Gc(2, 4);
    Gc << -alpha / 2, -beta / 2, 0, 0,
          -alpha * a / 2, -beta / 2, 0, 0;
    Mat Gb(2, 1);
    Gb << -alpha / 2, -alpha * a / 2;
    Vec c(2);
    c << beta / 2, beta / 2;
    Mat Ac(2, 4);
    Ac << 1, 0, 1, 0,
          0, 1, 0, 1;
    Mat Ab(2, 1);
    Ab << 1, -1;
    Vec b(2);
    b << 1, 1;

    CHECK(approx_equal(U.Gc(), Gc, 1e-12));
    CHECK(approx_equal(U.Gb(), Gb, 1e-12));
    CHECK(approx_equal(U.c(), c, 1e-12));
    CHECK(approx_equal(U.Ac(), Ac, 1e-12));
    CHECK(approx_equal(U.Ab(), Ab, 1e-12));
    CHECK(approx_equal(U.b(), b, 1e-12));
}

TEST_CASE("union_pair of identical sets is membership-equal")
{
    TestRng rng(17);
    HybridZonotope X = random_hz(rng, 2, 3, 1, 1);
    HybridZonotope U = union_pair(X, X);
    Vec lb, ub;
    X.interval_hull(lb, ub);
    for (const Vec& p : grid2d(lb[0], ub[0], lb[1], ub[1], 8))
        CHECK(contains_point(U, p) == contains_point(X, p));
}

TEST_CASE("union_pair of two points")
{
    Vec p0 = Vec::Zero(2), p1(2), mid(2);
    p1 << 1, 1;
    mid << 0.5, 0.5;
    HybridZonotope U =
        union_pair(HybridZonotope::point(p0), HybridZonotope::point(p1));
    CHECK(contains_point(U, p0));
    CHECK(contains_point(U, p1));
    CHECK_FALSE(contains_point(U, mid));
}

TEST_CASE("union_vrep_to_hz on a single triangle")
{
    Mat V(2, 3);
    V << 0, 1, 0,
         0, 0, 1;
    Mat M = Mat::Ones(3, 1);
    HybridZonotope T = union_vrep_to_hz(VPolytopeUnion(V, M));
    Vec centroid(2), outside(2);
    centroid << 1.0 / 3, 1.0 / 3;
    outside << 1, 1;
    CHECK(contains_point(T, centroid));
    CHECK_FALSE(contains_point(T, outside));
    CHECK(T.num_bin_gens() == 1);
}

TEST_CASE("union_vrep_to_hz on a V of two segments")
{
    // segments (-1,1)-(0,0) and (0,0)-(1,1) share the apex
    Mat V(2, 3);
    V << -1, 0, 1,
          1, 0, 1;
    Mat M = Mat::Zero(3, 2);
    M(0, 0) = M(1, 0) = 1;
    M(1, 1) = M(2, 1) = 1;
    HybridZonotope S = union_vrep_to_hz(VPolytopeUnion(V, M));
    Vec apex = Vec::Zero(2), gap(2), on_left(2);
    gap << 0.0, 0.7;  // between the arms
    on_left << -0.5, 0.5;
    CHECK(contains_point(S, apex));
    CHECK(contains_point(S, on_left));
    CHECK_FALSE(contains_point(S, gap));
    CHECK(S.num_bin_gens() == 2);
}

TEST_CASE("union_vrep_to_hz lifted variant is membership-equal")
{
    Mat V(2, 3);
    V << 0, 1, 0,
         0, 0, 1;
    Mat M = Mat::Ones(3, 1);
    VPolytopeUnion U(V, M);
    HybridZonotope plain = union_vrep_to_hz(U);
    HybridZonotope lifted = union_vrep_to_hz_lifted(U);
    CHECK(lifted.num_cont_gens() == plain.num_cont_gens() + 2);
    CHECK(lifted.num_constraints() == plain.num_constraints() + 2);
    for (const Vec& p : grid2d(-0.2, 1.2, -0.2, 1.2, 8))
        CHECK(contains_point(lifted, p) == contains_point(plain, p));
}

TEST_CASE("reduce_redundant_generators removes dead columns")
{
    TestRng rng(23);
    HybridZonotope X = random_hz(rng, 2, 3, 1, 1);
    Mat Gc = hcat({X.Gc(), Mat(Mat::Zero(2, 1))});
    Mat Ac = hcat({X.Ac(), Mat(Mat::Zero(1, 1))});
    HybridZonotope padded(Gc, X.Gb(), X.c(), Ac, X.Ab(), X.b());
    HybridZonotope R = reduce_redundant_generators(padded);
    CHECK(R.num_cont_gens() == X.num_cont_gens());
    Vec lb, ub;
    X.interval_hull(lb, ub);
    for (const Vec& p : grid2d(lb[0], ub[0], lb[1], ub[1], 6))
        CHECK(contains_point(R, p) == contains_point(X, p));
}

TEST_CASE("reduce_redundant_generators eliminates a duplicated generator")
{
    TestRng rng(29);
    HybridZonotope X = random_hz(rng, 2, 3, 1, 0);
    // duplicate generator 0 and tie the copy to the original
    Mat Gc = hcat({X.Gc(), Mat(X.Gc().col(0))});
    Mat Ac = Mat::Zero(1, 4);
    Ac(0, 0) = 1.0;
    Ac(0, 3) = -1.0;
    HybridZonotope padded(Gc, X.Gb(), X.c(), Ac, Mat::Zero(1, 1), Vec::Zero(1));
    HybridZonotope R = reduce_redundant_generators(padded);
    CHECK(R.num_cont_gens() <= X.num_cont_gens() + 1);
    CHECK(R.num_constraints() == 0);
    Vec lb, ub;
    padded.interval_hull(lb, ub);
    for (const Vec& p : grid2d(lb[0], ub[0], lb[1], ub[1], 15))
    {
        const bool expect = oracle_contains(padded, p);
        CHECK(contains_point(R, p) == expect);
    }
}

TEST_CASE("box to hz round-trips bounding intervals exactly")
{
    // dyadic endpoints make the midpoint/radius arithmetic exact in binary
    TestRng rng(31);
    for (int rep = 0; rep < 25; ++rep)
    {
        const Index n = 1 + rep % 3;
        Vec lb(n), ub(n);
        for (Index i = 0; i < n; ++i)
        {
            double a = static_cast<double>(rng.integer(-4000, 4000)) / 256.0;
            double w = static_cast<double>(rng.integer(0, 2000)) / 256.0;
            lb[i] = a;
            ub[i] = a + w;
        }
        Box box(lb, ub);
        HybridZonotope Z = box.to_hz();
        for (Index d = 0; d < n; ++d)
        {
            auto [lo, hi] = bounding_interval(Z, d);
            CHECK(lo == lb[d]);
            CHECK(hi == ub[d]);
        }
    }
}

TEST_CASE("constructive identities agree with the enumeration oracle")
{
    TestRng rng(37);
    for (int rep = 0; rep < 12; ++rep)
    {
        HybridZonotope X = random_hz(rng, 2, 3, 2, 1);
        HybridZonotope Z = random_hz(rng, 2, 2, 2, 1);

        std::vector<HybridZonotope> results;
        results.push_back(minkowski_sum(X, Z));
        results.push_back(union_pair(X, Z));
        results.push_back(intersection(X, Z));
        Mat R = random_matrix(rng, 1, 2);
        results.push_back(generalized_intersection(X, random_hz(rng, 1, 2, 1, 0), R));
        results.push_back(reduce_redundant_generators(X));

        for (const HybridZonotope& Y : results)
        {
            Vec lb, ub;
            Y.interval_hull(lb, ub);
            if (Y.num_bin_gens() > 6) continue;
            MembershipOracle oracle_prod(Y);
            for (const Vec& p : grid2d(lb[0] - 0.1, ub[0] + 0.1, lb[1] - 0.1,
                                       ub[1] + 0.1, 5))
            {
                const bool got = oracle_prod.contains(p);
                const bool want = oracle_contains(Y, p);
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("operation complexity bookkeeping")
{
    TestRng rng(41);
    HybridZonotope X = random_hz(rng, 2, 4, 2, 2);
    HybridZonotope Z = random_hz(rng, 2, 3, 1, 1);

    HybridZonotope mk = minkowski_sum(X, Z);
    CHECK(mk.num_cont_gens() == 7);
    CHECK(mk.num_bin_gens() == 3);
    CHECK(mk.num_constraints() == 3);

    HybridZonotope gi = intersection(X, Z);
    CHECK(gi.num_bin_gens() == 3);
    CHECK(gi.num_constraints() == X.num_constraints() + Z.num_constraints() + 2);

    HybridZonotope cp = cartesian_product(X, Z);
    CHECK(cp.dim() == 4);
    CHECK(cp.num_bin_gens() == 3);
}

TEST_CASE("hz json serialization round-trips")
{
    TestRng rng(43);
    HybridZonotope Z = random_hz(rng, 3, 4, 2, 2);
    Json j = hz_to_json(Z);
    HybridZonotope back = hz_from_json(j);
    CHECK(approx_equal(back.Gc(), Z.Gc(), 0.0));
    CHECK(approx_equal(back.Gb(), Z.Gb(), 0.0));
    CHECK(approx_equal(back.c(), Z.c(), 0.0));
    CHECK(approx_equal(back.Ac(), Z.Ac(), 0.0));
    CHECK(approx_equal(back.Ab(), Z.Ab(), 0.0));
    CHECK(approx_equal(back.b(), Z.b(), 0.0));

    HybridZonotope empty_blocks = HybridZonotope::point(Vec::Ones(2));
    Json je = hz_to_json(empty_blocks);
    CHECK(je["Gc"].empty());
    HybridZonotope back2 = hz_from_json(je);
    CHECK(back2.num_cont_gens() == 0);
    CHECK(back2.dim() == 2);
}

TEST_CASE("dimension mismatches throw")
{
    HybridZonotope sq = unit_square();
    CHECK_THROWS_AS(linear_map(Mat::Zero(2, 3), sq), std::invalid_argument);
    CHECK_THROWS_AS(minkowski_sum(sq, interval_hz(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(union_pair(sq, interval_hz(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(generalized_intersection(sq, sq, Mat::Zero(2, 3)),
                    std::invalid_argument);
    Vec bad_lb(1), bad_ub(1);
    bad_lb << 2;
    bad_ub << 1;
    CHECK_THROWS_AS(Box(bad_lb, bad_ub), std::invalid_argument);
}

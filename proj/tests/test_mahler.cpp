#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

#include <l2alex/mahler.hpp>

using namespace l2alex;

namespace {

QPoly pp(const std::string& s) { return parse_poly(s).poly; }

// quadratic-formula oracle for the figure-eight polynomial z^2 - 3z + 1
constexpr double kGoldenSqPlus = 2.6180339887498949;  // (3 + sqrt 5)/2
constexpr double kGoldenSqMinus = 0.38196601125010515; // (3 - sqrt 5)/2

} // namespace

TEST_CASE("roots of z^2 - 3z + 1 match the quadratic formula") {
    RootData rd = one_var_roots(pp("z^2 - 3*z + 1"));
    REQUIRE(rd.clusters.size() == 2);
    REQUIRE(rd.clusters[0].modulus == Catch::Approx(kGoldenSqMinus).margin(1e-12));
    REQUIRE(rd.clusters[1].modulus == Catch::Approx(kGoldenSqPlus).margin(1e-12));
    REQUIRE(rd.clusters[0].mult == 1);
    REQUIRE(rd.clusters[1].mult == 1);
    REQUIRE_FALSE(rd.clusters[0].snapped_one);
}

TEST_CASE("degree one factors give exact moduli") {
    RootData rd = one_var_roots(pp("1 - 3*z"));
    REQUIRE(rd.clusters.size() == 1);
    REQUIRE(rd.clusters[0].modulus == 1.0 / 3.0); // exact rational, bitwise
    REQUIRE(rd.err == 0.0);
    MahlerValue m = mahler_jensen(pp("1 - 3*z"));
    REQUIRE(m.value == 3.0);
    REQUIRE(m.err == 0.0);
    REQUIRE(m.method == MahlerMethod::jensen);
}

TEST_CASE("cyclotomic roots snap to the unit circle") {
    RootData rd = one_var_roots(pp("z^6 - 1"));
    std::int64_t total = 0;
    for (auto& cl : rd.clusters) {
        REQUIRE(cl.modulus == 1.0);
        REQUIRE(cl.snapped_one);
        total += cl.mult;
    }
    REQUIRE(total == 6);
    MahlerValue m = mahler_jensen(pp("z^6 - 1"));
    REQUIRE(m.value == 1.0);
}

TEST_CASE("repeated roots are resolved through squarefree decomposition") {
    QPoly p = lp_pow(pp("z - 2"), 3);
    RootData rd = one_var_roots(p);
    REQUIRE(rd.clusters.size() == 1);
    REQUIRE(rd.clusters[0].modulus == 2.0);
    REQUIRE(rd.clusters[0].mult == 3);
}

TEST_CASE("monomial factors are carried separately") {
    RootData rd = one_var_roots(pp("z^5 - 3*z^3"));
    REQUIRE(rd.monomial_exp == 3);
    MahlerValue m = mahler_jensen(pp("z^5 - 3*z^3"));
    REQUIRE(m.value == Catch::Approx(3.0).epsilon(1e-12)); // sqrt(3) roots, |lead| = 1
}

TEST_CASE("root product invariant holds on random polynomials") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        QPoly p = oracle::random_poly(rng, 1, 5, 6, 9);
        if (p.is_zero()) continue;
        RootData rd = one_var_roots(p); // throws if product check fails internally
        REQUIRE(rd.err <= 1e-8);
    }
}

TEST_CASE("scaled jensen evaluation") {
    RootData rd = one_var_roots(pp("1 - z"));
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        MahlerValue v = mahler_jensen_scaled(rd, 1.0, t);
        REQUIRE(v.value == std::max(1.0, t));
        REQUIRE(v.err == 0.0);
    }
    // s = 2 turns the breakpoint into t^2
    for (double t : {0.5, 3.0}) {
        MahlerValue v = mahler_jensen_scaled(rd, 2.0, t);
        REQUIRE(v.value == std::max(1.0, t * t));
    }
}

TEST_CASE("quadrature agrees with jensen on one-variable polynomials") {
    std::mt19937 rng(42);
    int checked = 0;
    while (checked < 8) {
        QPoly p = oracle::random_poly(rng, 1, 4, 4, 9);
        if (p.is_zero()) continue;
        ++checked;
        MahlerValue j = mahler_jensen(p);
        MahlerValue q = mahler_quadrature(p, 4096);
        REQUIRE(std::fabs(std::log(q.value) - std::log(j.value)) <= 1e-3);
    }
}

TEST_CASE("quadrature pins the two-variable triangle polynomial") {
    // m(1 + z1 + z2) = 1.38135644451849... (Smyth)
    MahlerValue v = mahler_quadrature(pp("1 + z1 + z2"), 1024);
    REQUIRE(v.value == Catch::Approx(1.3813564445184977).epsilon(5e-3));
}

TEST_CASE("quadrature is deterministic across thread counts") {
    QPoly p = pp("1 + z1 + z2 + z1*z2^-1");
    MahlerValue a = mahler_quadrature(p, 256);
    MahlerValue b = mahler_quadrature(p, 256);
    REQUIRE(a.value == b.value);
    REQUIRE(a.err == b.err);
}

TEST_CASE("fk determinant routes by variable count") {
    QMat M1(1, 1, 1);
    M1.at(0, 0) = pp("1 - z");
    MahlerValue v1 = fk_det_abelian(M1, {1.0}, 2.0);
    REQUIRE(v1.method == MahlerMethod::jensen);
    REQUIRE(v1.value == 2.0);

    QMat M2(1, 1, 2);
    M2.at(0, 0) = pp("1 + z1 + z2");
    MahlerValue v2 = fk_det_abelian(M2, {0.0, 0.0}, 1.0);
    REQUIRE(v2.method == MahlerMethod::quadrature);
    REQUIRE(v2.value == Catch::Approx(1.3813564445184977).epsilon(5e-3));

    QMat Z(2, 2, 1);
    MahlerValue vz = fk_det_abelian(Z, {1.0}, 2.0);
    REQUIRE(vz.value == 0.0);
    REQUIRE(vz.method == MahlerMethod::exact);
}

TEST_CASE("index-2 induction of multiplication by z") {
    QMat M = induce_index_d(pp("z"), 2);
    REQUIRE(M.rows == 2);
    REQUIRE(M.cols == 2);
    // z maps coset 0 -> coset 1 directly and coset 1 -> coset 0 with a carry
    REQUIRE(M.at(0, 0).is_zero());
    REQUIRE(lp_sub(M.at(0, 1), pp("w")).is_zero());
    REQUIRE(lp_sub(M.at(1, 0), lp_const(1, Rat(1))).is_zero());
    REQUIRE(M.at(1, 1).is_zero());
}

TEST_CASE("index-d induction preserves mahler measure as a d-th power") {
    QPoly p = pp("1 - 3*z");
    QMat M = induce_index_d(p, 3);
    QPoly D = lp_det(M);
    REQUIRE(lp_sub(lp_normalize_unit(D), pp("27*z - 1")).is_zero());
    MahlerValue md = mahler_jensen(D);
    MahlerValue mp = mahler_jensen(p);
    REQUIRE(md.value == Catch::Approx(std::pow(mp.value, 3.0)).epsilon(1e-12));
}

TEST_CASE("negative exponents pass through induction") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        QPoly p = oracle::random_poly(rng, 1, 4, 5, 9);
        if (p.is_zero()) continue;
        for (int d : {2, 3}) {
            QPoly D = lp_det(induce_index_d(p, d));
            if (D.is_zero()) continue;
            double lhs = mahler_jensen(D).value;
            double rhs = std::pow(mahler_jensen(p).value, (double)d);
            REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-9));
        }
    }
}

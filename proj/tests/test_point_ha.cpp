#include <doctest.h>
#include <set>

#include "fixtures_common.hpp"
#include "ha2kit/point_ha.hpp"
#include "ha2kit/structure_maps.hpp"

using namespace ha2kit;
using namespace ha2kit::fixtures;

namespace {

// g = so(3), C = g, pa = id, box = ad, beta = pa o bracket, omega_bar = 0
PointHAData so3_adjoint_point() {
    PointHAData P = PointHAData::zeros(3, 3);
    for (size_t k = 0; k < 3; ++k)
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                P.bracket[k][i][j] = Rational(eps3(i, j, k));
                P.beta[k][i][j] = Rational(eps3(i, j, k));
                P.box[k][i][j] = Rational(eps3(i, j, k));  // ad_{e_i} e_nu = eps_{i nu k} e_k
            }
    for (size_t i = 0; i < 3; ++i) P.pa[i][i] = Rational(1);
    return P;
}

PointHAData random_point(Rng& rng, size_t r, size_t m) {
    PointHAData P = PointHAData::zeros(r, m);
    for (size_t k = 0; k < r; ++k)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i + 1; j < r; ++j) {
                Rational v(rng.range(-2, 2));
                P.bracket[k][i][j] = v;
                P.bracket[k][j][i] = -v;
            }
    for (size_t mu = 0; mu < m; ++mu) {
        for (size_t i = 0; i < r; ++i) {
            P.pa[mu][i] = Rational(rng.range(-2, 2));
            for (size_t j = i + 1; j < r; ++j) {
                Rational v(rng.range(-2, 2));
                P.beta[mu][i][j] = v;
                P.beta[mu][j][i] = -v;
            }
            for (size_t nu = 0; nu < m; ++nu) P.box[mu][i][nu] = Rational(rng.range(-2, 2));
            for (size_t k = 0; k < r; ++k)
                for (size_t j = i; j < r; ++j)
                    P.omega_bar[mu][k][i][j] = P.omega_bar[mu][k][j][i] = Rational(rng.range(-2, 2));
        }
    }
    return P;
}

}  // namespace

TEST_CASE("the adjoint point HA of so(3) is Lie") {
    PointHAData P = so3_adjoint_point();
    P.validate();
    CHECK(check_point_lie(P).pass());
    HA2Data H = point_to_ha2(P);
    CHECK(check_al2(H).pass());
    CHECK(check_lie2(H).pass());
    CHECK(check_lie2_brackets(H).pass());
    CHECK(point_equivalence_test(P));
}

TEST_CASE("abelian zero data is Lie") {
    PointHAData P = PointHAData::zeros(2, 2);
    CHECK(check_point_lie(P).pass());
    CHECK(check_lie2(point_to_ha2(P)).pass());
}

TEST_CASE("single-condition violations fail exactly the matching family") {
    auto failing_families = [](const PointHAData& P) {
        std::set<std::string> out;
        for (const auto& c : check_point_lie(P).checks)
            if (!c.pass) out.insert(c.equation_id);
        return out;
    };

    // non-Jacobi bracket with every map zero
    {
        PointHAData P = PointHAData::zeros(3, 1);
        P.bracket[2][0][1] = Rational(1);
        P.bracket[2][1][0] = Rational(-1);
        P.bracket[1][1][2] = Rational(1);
        P.bracket[1][2][1] = Rational(-1);
        CHECK(failing_families(P) == std::set<std::string>{"thm:HA_point.jacobi"});
        CHECK(point_equivalence_test(P));
    }
    // non-module box over an abelian algebra
    {
        PointHAData P = PointHAData::zeros(2, 2);
        P.box[0][0][1] = Rational(1);  // box_1 = E_01
        P.box[1][1][0] = Rational(1);  // box_2 = E_10, [box_1, box_2] != 0
        CHECK(failing_families(P) == std::set<std::string>{"thm:HA_point.module"});
        CHECK(point_equivalence_test(P));
    }
    // non-equivariant pa: so(3) acting trivially on C = R^3 but pa = id
    {
        PointHAData P = so3_adjoint_point();
        for (auto& a : P.box)
            for (auto& b : a)
                for (auto& c : b) c = Rational(0);
        // keep beta = pa o bracket so only equivariance breaks
        CHECK(failing_families(P) == std::set<std::string>{"thm:HA_point.equivariance"});
        CHECK(point_equivalence_test(P));
    }
    // omega_bar != 0 on otherwise-Lie data
    {
        PointHAData P = so3_adjoint_point();
        P.omega_bar[0][0][1][1] = Rational(1);
        CHECK(failing_families(P) == std::set<std::string>{"thm:HA_point.omega_bar"});
        CHECK(point_equivalence_test(P));
        // the generic checker localizes this in the e:coord_omega family
        VerificationReport rep = check_lie2(point_to_ha2(P));
        CHECK_FALSE(rep.pass());
        for (const auto& c : rep.checks)
            if (!c.pass) CHECK(c.equation_id == "e:coord_omega");
    }
    // beta not pa o bracket on an abelian algebra (r = 2, m = 1)
    {
        PointHAData P = PointHAData::zeros(2, 1);
        P.beta[0][0][1] = Rational(1);
        P.beta[0][1][0] = Rational(-1);
        CHECK(failing_families(P) == std::set<std::string>{"thm:HA_point.beta"});
        CHECK(point_equivalence_test(P));
        CHECK_FALSE(check_lie2(point_to_ha2(P)).pass());
    }
}

TEST_CASE("a non-Jacobi bracket fails the lift checks at the weight-zero pair") {
    PointHAData P = PointHAData::zeros(3, 1);
    P.bracket[2][0][1] = Rational(1);
    P.bracket[2][1][0] = Rational(-1);
    P.bracket[1][1][2] = Rational(1);
    P.bracket[1][2][1] = Rational(-1);
    VerificationReport rep = check_lie2_brackets(point_to_ha2(P));
    CHECK_FALSE(rep.pass());
    bool failed_at_00 = false;
    for (const auto& c : rep.checks)
        if (!c.pass && c.indices.find("alpha=0,beta=0") != std::string::npos) failed_at_00 = true;
    CHECK(failed_at_00);
}

TEST_CASE("classification agrees with the generic checkers on a fuzz corpus") {
    Rng rng(424242);
    for (int t = 0; t < 300; ++t) {
        size_t r = 1 + rng.below(3), m = 1 + rng.below(3);
        PointHAData P = random_point(rng, r, m);
        CHECK(point_equivalence_test(P));
    }
}

TEST_CASE("degenerate point data is trivially Lie") {
    for (auto [r, m] : {std::pair<size_t, size_t>{0, 0}, {0, 2}, {2, 0}}) {
        PointHAData P = PointHAData::zeros(r, m);
        CHECK(check_point_lie(P).pass());
        CHECK(point_equivalence_test(P));
    }
}

TEST_CASE("lift fields of a point HA reproduce the weight table") {
    PointHAData P = so3_adjoint_point();
    HA2Data H = point_to_ha2(P);
    Chart ch = H.e2_chart();
    // [e1^<-1>, e2^<-1>] = 2 beta(e1, e2) as a weight -2 field
    VectorField b = vf_bracket(lift(H, H.frame_A(0), -1), lift(H, H.frame_A(1), -1));
    CHECK(vf_weight(b, ch).is(-2));
    Section bb = struct_beta(H, H.frame_A(0), H.frame_A(1));
    for (size_t mu = 0; mu < 3; ++mu)
        CHECK(b.coeff(H.zv(mu)) == Poly::constant(ch.size(), bb[mu].constant_term() * Rational(2)));
    // and beta matches the stored constants
    for (size_t mu = 0; mu < 3; ++mu) CHECK(bb[mu].constant_term() == P.beta[mu][0][1]);
}

TEST_CASE("Lie point data is determined by the module and pa") {
    // for every Lie instance, beta and omega_bar are forced
    PointHAData P = so3_adjoint_point();
    REQUIRE(check_point_lie(P).pass());
    for (size_t mu = 0; mu < 3; ++mu)
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                Rational forced(0);
                for (size_t l = 0; l < 3; ++l) forced += P.pa[mu][l] * P.bracket[l][i][j];
                CHECK(P.beta[mu][i][j] == forced);
                for (size_t k = 0; k < 3; ++k) CHECK(P.omega_bar[mu][k][i][j].is_zero());
            }
}

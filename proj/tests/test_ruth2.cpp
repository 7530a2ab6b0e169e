#include <doctest.h>

#include "fixtures_common.hpp"
#include "ha2kit/prolong.hpp"
#include "ha2kit/point_ha.hpp"
#include "ha2kit/ruth2.hpp"

using namespace ha2kit;
using namespace ha2kit::fixtures;

namespace {

Connection poly_connection(size_t n, size_t r, uint64_t seed) {
    Connection c = Connection::zero(n, r);
    Rng rng(seed);
    for (size_t j = 0; j < r; ++j)
        for (size_t a = 0; a < n; ++a)
            for (size_t i = 0; i < r; ++i) c.Gamma[j][a][i] = rng.poly(n, 1, -2, 2, 50);
    return c;
}

RuthMorphism identity_morphism(const Ruth2Data& R) {
    size_t n = R.algebroid.base_dim;
    RuthMorphism Phi;
    Phi.Phi0_deg0.assign(R.F0_rank, std::vector<Poly>(R.F0_rank, Poly::zero(n)));
    for (size_t p = 0; p < R.F0_rank; ++p) Phi.Phi0_deg0[p][p] = Poly::one(n);
    Phi.Phi0_deg1.assign(R.F1_rank, std::vector<Poly>(R.F1_rank, Poly::zero(n)));
    for (size_t q = 0; q < R.F1_rank; ++q) Phi.Phi0_deg1[q][q] = Poly::one(n);
    Phi.Phi1.assign(R.F0_rank, std::vector<std::vector<Poly>>(R.algebroid.rank,
                                                              std::vector<Poly>(R.F1_rank, Poly::zero(n))));
    return Phi;
}

}  // namespace

TEST_CASE("A-connection evaluation is tensorial in s and Leibniz in v") {
    Algebroid1Data T = tangent_alg(2);
    Ruth2Data R = Ruth2Data::zeros(T, 2, 1);  // flat trivial connections
    Section e1 = T.frame(0);
    Section f1(2, Poly::zero(2));
    f1[0] = Poly::one(2);
    // flat connection on a constant section gives zero
    Section out = a_connection_apply(R, 0, e1, f1);
    for (const auto& c : out) CHECK(c.is_zero());
    // Leibniz: nabla_{e1}(x1 f1) = f1
    Section xf = f1;
    xf[0] = Poly::variable(2, 0);
    out = a_connection_apply(R, 0, e1, xf);
    CHECK(out[0] == Poly::one(2));
    CHECK(out[1].is_zero());
    // tensorial: nabla_{x1 e1} v = x1 nabla_{e1} v
    Section xe = e1;
    xe[0] = Poly::variable(2, 0);
    Section lhs = a_connection_apply(R, 0, xe, xf);
    CHECK(lhs[0] == Poly::variable(2, 0));
}

TEST_CASE("adjoint representation of the tangent algebroid is flat and trivial") {
    Algebroid1Data T = tangent_alg(2);
    Ruth2Data R = adjoint_rep(T, Connection::zero(2, 2));
    for (const auto& a : R.K)
        for (const auto& b : a)
            for (const auto& c : b)
                for (const auto& d : c) CHECK(d.is_zero());
    for (const auto& a : R.conn0)
        for (const auto& b : a)
            for (const auto& c : b) CHECK(c.is_zero());
    CHECK(check_ruth(R).pass());
}

TEST_CASE("adjoint representation of the so(3) action algebroid") {
    Algebroid1Data A = so3_action();
    for (uint64_t seed : {0ull, 5ull}) {
        Connection nabla = seed == 0 ? Connection::zero(3, 3) : poly_connection(3, 3, seed);
        Ruth2Data R = adjoint_rep(A, nabla);
        R.validate();
        VerificationReport rep = check_ruth(R);
        if (!rep.pass())
            for (const auto& c : rep.checks)
                if (!c.pass) MESSAGE(c.equation_id, " ", c.indices, " -> ", c.residual);
        CHECK(rep.pass());
        CHECK(check_morphism(identity_morphism(R), R, R).pass());
    }
}

TEST_CASE("adjoint representation over a point has a vacuous degree-1 term") {
    Algebroid1Data g = so3_point();
    Ruth2Data R = adjoint_rep(g, Connection::zero(0, 3));
    CHECK(R.F1_rank == 0);
    CHECK(check_ruth(R).pass());
    // nabla^A = bracket action
    for (size_t k = 0; k < 3; ++k)
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) CHECK(R.conn0[k][i][j] == g.Q_k_ij[k][i][j]);
}

TEST_CASE("flat connection and constant brackets give vanishing basic curvature") {
    // every term of the basic curvature vanishes for the so(3) action with
    // the flat connection; a polynomial connection is needed to curve it
    Ruth2Data R0 = adjoint_rep(so3_action(), Connection::zero(3, 3));
    for (const auto& a : R0.K)
        for (const auto& b : a)
            for (const auto& c : b)
                for (const auto& d : c) CHECK(d.is_zero());
}

TEST_CASE("zeroing K on a curved representation breaks condition (ii)") {
    Algebroid1Data A = so3_action();
    Ruth2Data R = adjoint_rep(A, poly_connection(3, 3, 1234));
    bool has_nonzero_K = false;
    for (const auto& a : R.K)
        for (const auto& b : a)
            for (const auto& c : b)
                for (const auto& d : c)
                    if (!d.is_zero()) has_nonzero_K = true;
    REQUIRE(has_nonzero_K);
    for (auto& a : R.K)
        for (auto& b : a)
            for (auto& c : b)
                for (auto& d : c) d = Poly::zero(3);
    VerificationReport rep = check_ruth(R);
    CHECK_FALSE(rep.pass());
    bool curv_family_failed = false;
    for (const auto& c : rep.checks)
        if (!c.pass) {
            CHECK(c.equation_id.substr(0, 8) == "rep:curv");
            curv_family_failed = true;
        }
    CHECK(curv_family_failed);
}

TEST_CASE("ha_to_ruth produces a representation plus the canonical morphism") {
    std::vector<HA2Data> fixtures = {HA2Data::t2m(2), prolong2(so3_action()), prolong2(tangent_alg(2))};
    for (const HA2Data& H : fixtures)
        for (uint64_t seed : {0ull, 9ull}) {
            Connection nabla =
                seed == 0 ? Connection::zero(H.base_dim, H.rank_A) : poly_connection(H.base_dim, H.rank_A, seed);
            RuthFromHA out = ha_to_ruth(H, nabla);
            out.ruth.validate();
            CHECK(check_ruth(out.ruth).pass());
            CHECK(check_morphism(out.to_adjoint, out.ruth, adjoint_rep(H.alg1, nabla)).pass());
        }
}

TEST_CASE("connection-change morphism between the two induced representations") {
    for (const HA2Data& H : {prolong2(so3_action()), HA2Data::t2m(2)}) {
        Connection c1 = Connection::zero(H.base_dim, H.rank_A);
        Connection c2 = poly_connection(H.base_dim, H.rank_A, 21);
        Ruth2Data Rold = ha_to_ruth(H, c2).ruth;  // source: the tilde connection
        Ruth2Data Rnew = ha_to_ruth(H, c1).ruth;  // target: the plain connection
        RuthMorphism Phi;
        size_t n = H.base_dim, r = H.rank_A, m = H.rank_C;
        Phi.Phi0_deg0.assign(r, std::vector<Poly>(r, Poly::zero(n)));
        for (size_t i = 0; i < r; ++i) Phi.Phi0_deg0[i][i] = Poly::one(n);
        Phi.Phi0_deg1.assign(m, std::vector<Poly>(m, Poly::zero(n)));
        for (size_t mu = 0; mu < m; ++mu) Phi.Phi0_deg1[mu][mu] = Poly::one(n);
        // Phi1(s)(v) = nabla_{sharpC v} s - nabla~_{sharpC v} s
        Phi.Phi1.assign(r, std::vector<std::vector<Poly>>(r, std::vector<Poly>(m, Poly::zero(n))));
        for (size_t p = 0; p < r; ++p)
            for (size_t i = 0; i < r; ++i)
                for (size_t w = 0; w < m; ++w) {
                    Poly c = Poly::zero(n);
                    for (size_t a = 0; a < n; ++a)
                        c += H.Q_a_mu[a][w] * (c1.Gamma[p][a][i] - c2.Gamma[p][a][i]);
                    Phi.Phi1[p][i][w] = c;
                }
        VerificationReport rep = check_morphism(Phi, Rold, Rnew);
        if (!rep.pass())
            for (const auto& c : rep.checks)
                if (!c.pass) MESSAGE(c.equation_id, " ", c.indices, " -> ", c.residual);
        CHECK(rep.pass());
    }
}

TEST_CASE("round trip through the correspondence recovers the adapted data") {
    for (const HA2Data& H : {HA2Data::t2m(2), prolong2(so3_action()), prolong2(tangent_alg(2)),
                             point_to_ha2([] {
                                 PointHAData P = PointHAData::zeros(3, 3);
                                 for (size_t k = 0; k < 3; ++k)
                                     for (size_t i = 0; i < 3; ++i)
                                         for (size_t j = 0; j < 3; ++j) {
                                             P.bracket[k][i][j] = Rational(eps3(i, j, k));
                                             P.beta[k][i][j] = Rational(eps3(i, j, k));
                                             P.box[k][i][j] = Rational(eps3(i, j, k));
                                         }
                                 for (size_t i = 0; i < 3; ++i) P.pa[i][i] = Rational(1);
                                 return P;
                             }())}) {
        Connection c1 = Connection::zero(H.base_dim, H.rank_A);
        Connection c2 = poly_connection(H.base_dim, H.rank_A, 33);
        RuthFromHA out1 = ha_to_ruth(H, c1);
        RuthFromHA out2 = ha_to_ruth(H, c2);
        HA2Data back1 = ruth_to_ha(out1.ruth, out1.to_adjoint, c1);
        HA2Data back2 = ruth_to_ha(out2.ruth, out2.to_adjoint, c2);
        CHECK(back1 == to_adapted(H));
        CHECK(back2 == to_adapted(H));  // reconstruction is connection-independent
        CHECK(check_al2(back1).pass());
        CHECK(check_lie2(back1).pass());
    }
}

TEST_CASE("reconstruction from the adjoint representation itself") {
    Algebroid1Data A = so3_action();
    Connection zero = Connection::zero(3, 3);
    Ruth2Data R = adjoint_rep(A, zero);
    RuthMorphism Phi = identity_morphism(R);
    HA2Data H = ruth_to_ha(R, Phi, zero);
    // pa = anchor matrix, sharpC = identity, box_s = [anchor s, .]
    for (size_t mu = 0; mu < 3; ++mu)
        for (size_t i = 0; i < 3; ++i) CHECK(H.Q_mu_i[mu][i] == A.Q_a_i[mu][i]);
    for (size_t a = 0; a < 3; ++a)
        for (size_t mu = 0; mu < 3; ++mu)
            CHECK(H.Q_a_mu[a][mu] == (a == mu ? Poly::one(3) : Poly::zero(3)));
    for (size_t mu = 0; mu < 3; ++mu)
        for (size_t nu = 0; nu < 3; ++nu)
            for (size_t i = 0; i < 3; ++i) CHECK(H.Q_mu_nui[mu][nu][i] == A.Q_a_i[mu][i].diff(nu));
    CHECK(check_al2(H).pass());
    CHECK(check_lie2(H).pass());
    CHECK(check_lie2_brackets(H).pass());
    // box on frames is the bracket of anchor fields with core fields
    for (size_t i = 0; i < 3; ++i)
        for (size_t nu = 0; nu < 3; ++nu) {
            Section box = struct_box(H, H.frame_A(i), H.frame_C(nu));
            VectorField dxnu(A.base_chart());
            dxnu.set_coeff(nu, Poly::one(3));
            VectorField want = vf_bracket(anchor_apply(A, A.frame(i)), dxnu);
            for (size_t mu = 0; mu < 3; ++mu) CHECK(box[mu] == want.coeff(mu));
        }
}

TEST_CASE("reconstruction over a point gives the split Lie point HA") {
    Algebroid1Data g = so3_point();
    Connection zero = Connection::zero(0, 3);
    Ruth2Data R = Ruth2Data::zeros(g, 3, 3);
    // pa = id, box = ad realized through nabla^C = ad (no correction over a point)
    for (size_t i = 0; i < 3; ++i) R.partial[i][i] = Poly::one(0);
    for (size_t k = 0; k < 3; ++k)
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                R.conn0[k][i][j] = g.Q_k_ij[k][i][j];
                R.conn1[k][i][j] = g.Q_k_ij[k][i][j];
            }
    RuthMorphism Phi;
    Phi.Phi0_deg0.assign(3, std::vector<Poly>(3, Poly::zero(0)));
    for (size_t i = 0; i < 3; ++i) Phi.Phi0_deg0[i][i] = Poly::one(0);
    Phi.Phi0_deg1.clear();  // the adjoint degree-1 term TM has rank 0 over a point
    Phi.Phi1.assign(3, std::vector<std::vector<Poly>>(3, std::vector<Poly>(3, Poly::zero(0))));
    HA2Data H = ruth_to_ha(R, Phi, zero);
    CHECK(check_lie2(H).pass());
    CHECK(check_al2(H).pass());
    // equals the point construction with box = ad, beta = pa o bracket
    PointHAData P = PointHAData::zeros(3, 3);
    for (size_t k = 0; k < 3; ++k)
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                P.bracket[k][i][j] = Rational(eps3(i, j, k));
                P.beta[k][i][j] = Rational(eps3(i, j, k));
                P.box[k][i][j] = Rational(eps3(i, j, k));
            }
    for (size_t i = 0; i < 3; ++i) P.pa[i][i] = Rational(1);
    CHECK(H == point_to_ha2(P));
}

TEST_CASE("shape violations and incompatible inputs are rejected") {
    Algebroid1Data A = so3_action();
    Connection zero = Connection::zero(3, 3);
    Ruth2Data R = adjoint_rep(A, zero);
    RuthMorphism Phi = identity_morphism(R);
    RuthMorphism bad = Phi;
    bad.Phi1[0][0][0] = Poly::one(3);
    CHECK_THROWS_AS(ruth_to_ha(R, bad, zero), ShapeViolation);
    bad = Phi;
    bad.Phi0_deg0[0][0] = Poly::constant(3, Rational(2));
    CHECK_THROWS_AS(ruth_to_ha(R, bad, zero), ShapeViolation);
    Ruth2Data broken = R;
    broken.conn0[0][0][0] += Poly::one(3);
    CHECK_THROWS_AS(ruth_to_ha(broken, Phi, zero), IncompatibleInput);
}

TEST_CASE("for a prolongation the two induced connections coincide") {
    // on the representation induced by prolong2(A) the core is A itself and
    // nabla^C agrees with nabla^A under that identification
    HA2Data P = prolong2(so3_action());
    Connection nabla = poly_connection(3, 3, 44);
    Ruth2Data R = ha_to_ruth(P, nabla).ruth;
    CHECK(R.conn0 == R.conn1);
}

TEST_CASE("adjoint curvature identity: curv(nabla^A)(s1,s2)(s) = -K(s1,s2)(pa s)") {
    Algebroid1Data A = so3_action();
    Ruth2Data R = adjoint_rep(A, poly_connection(3, 3, 99));
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t s = 0; s < 3; ++s) {
                Section es = A.frame(s);
                Section curv = a_connection_apply(R, 0, A.frame(i), a_connection_apply(R, 0, A.frame(j), es));
                Section ji = a_connection_apply(R, 0, A.frame(j), a_connection_apply(R, 0, A.frame(i), es));
                Section br = a_connection_apply(R, 0, bracket_sections(A, A.frame(i), A.frame(j)), es);
                Section pas(R.F1_rank, Poly::zero(3));
                for (size_t a = 0; a < 3; ++a)
                    for (size_t l = 0; l < 3; ++l) pas[a] += R.partial[a][l] * es[l];
                for (size_t k = 0; k < 3; ++k) {
                    Poly lhs = curv[k] - ji[k] - br[k];
                    Poly rhs = Poly::zero(3);
                    for (size_t w = 0; w < R.F1_rank; ++w) rhs -= R.K[k][i][j][w] * pas[w];
                    CHECK(lhs == rhs);
                }
            }
}

TEST_CASE("the induced K is the basic curvature composed with sharpC") {
    HA2Data P = prolong2(so3_action());
    Connection nabla = poly_connection(3, 3, 77);
    Ruth2Data R = ha_to_ruth(P, nabla).ruth;
    Ruth2Data adj = adjoint_rep(P.alg1, nabla);
    // K(s1,s2)(c_nu) = R^bas(s1,s2)(sharpC c_nu)
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t nu = 0; nu < 3; ++nu)
                for (size_t k = 0; k < 3; ++k) {
                    Poly want = Poly::zero(3);
                    for (size_t b = 0; b < 3; ++b) want += adj.K[k][i][j][b] * P.Q_a_mu[b][nu];
                    CHECK(R.K[k][i][j][nu] == want);
                }
}

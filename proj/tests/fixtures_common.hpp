#ifndef HA2KIT_TESTS_FIXTURES_COMMON_HPP
#define HA2KIT_TESTS_FIXTURES_COMMON_HPP

#include "ha2kit/algebroid1.hpp"
#include "ha2kit/ha2.hpp"
#include "ha2kit/random.hpp"

namespace ha2kit::fixtures {

// Levi-Civita symbol; eps(1,2,3) = +1 with 0-based arguments eps(0,1,2) = +1.
inline int eps3(size_t i, size_t j, size_t k) {
    if (i == j || j == k || i == k) return 0;
    return ((j + 3 - i) % 3 == 1) ? 1 : -1;
}

// action algebroid of so(3) on R^3: anchor(e_i) = eps_{iab} x^b d_{x^a},
// [e_i, e_j] = eps_{ijk} e_k
inline Algebroid1Data so3_action() {
    Algebroid1Data A = Algebroid1Data::zeros(3, 3);
    for (size_t i = 0; i < 3; ++i)
        for (size_t a = 0; a < 3; ++a)
            for (size_t b = 0; b < 3; ++b) {
                int e = eps3(i, a, b);
                if (e) A.Q_a_i[a][i] += Poly::variable(3, b) * Rational(e);
            }
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t k = 0; k < 3; ++k) A.Q_k_ij[k][i][j] = Poly::constant(3, Rational(eps3(i, j, k)));
    return A;
}

// tangent algebroid of R^n in the coordinate frame
inline Algebroid1Data tangent_alg(size_t n) {
    Algebroid1Data A = Algebroid1Data::zeros(n, n);
    for (size_t a = 0; a < n; ++a) A.Q_a_i[a][a] = Poly::one(n);
    return A;
}

// so(3) as a Lie algebra over a point
inline Algebroid1Data so3_point() {
    Algebroid1Data A = Algebroid1Data::zeros(0, 3);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t k = 0; k < 3; ++k) A.Q_k_ij[k][i][j] = Poly::constant(0, Rational(eps3(i, j, k)));
    return A;
}

// tangent algebroid of R^2 in the frame (d_1 + x2^2 d_2, d_2): a Lie
// algebroid with non-constant bracket functions, [e1, e2] = -2 x2 e2
inline Algebroid1Data twisted_tm2() {
    Algebroid1Data A = Algebroid1Data::zeros(2, 2);
    A.Q_a_i[0][0] = Poly::one(2);
    A.Q_a_i[1][0] = Poly::variable(2, 1, 2);
    A.Q_a_i[1][1] = Poly::one(2);
    A.Q_k_ij[1][0][1] = Poly::variable(2, 1) * Rational(-2);
    A.Q_k_ij[1][1][0] = Poly::variable(2, 1) * Rational(2);
    return A;
}

// change of trivialization e'_i = T^k_i e_k with inverse S; the axioms are
// frame-independent, so this is a supply of nontrivial Lie fixtures
inline Algebroid1Data frame_change(const Algebroid1Data& A, const std::vector<std::vector<Poly>>& T,
                                   const std::vector<std::vector<Poly>>& S) {
    const size_t n = A.base_dim, r = A.rank;
    Algebroid1Data out = Algebroid1Data::zeros(n, r);
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < r; ++i)
            for (size_t k = 0; k < r; ++k) out.Q_a_i[a][i] += A.Q_a_i[a][k] * T[k][i];
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            Section ti(r, Poly::zero(n)), tj(r, Poly::zero(n));
            for (size_t k = 0; k < r; ++k) {
                ti[k] = T[k][i];
                tj[k] = T[k][j];
            }
            Section br = bracket_sections(A, ti, tj);
            for (size_t m = 0; m < r; ++m) {
                Poly c = Poly::zero(n);
                for (size_t l = 0; l < r; ++l) c += S[m][l] * br[l];
                out.Q_k_ij[m][i][j] = c;
            }
        }
    return out;
}

// the so(3) action algebroid in a unipotent polynomial frame
inline Algebroid1Data twisted_so3() {
    Algebroid1Data A = so3_action();
    std::vector<std::vector<Poly>> T(3, std::vector<Poly>(3, Poly::zero(3)));
    std::vector<std::vector<Poly>> S(3, std::vector<Poly>(3, Poly::zero(3)));
    for (size_t i = 0; i < 3; ++i) T[i][i] = S[i][i] = Poly::one(3);
    T[1][0] = Poly::variable(3, 0);   // e'_1 = e_1 + x1 e_2
    S[1][0] = -Poly::variable(3, 0);
    return frame_change(A, T, S);
}

// inverse of the adapting chart change: inject a symmetric block U^mu_ij
// into Q_mu_ij together with its compensations, so that
// to_adapted(unadapt(H, U)) == H for adapted H
inline HA2Data unadapt(const HA2Data& H, const std::vector<std::vector<std::vector<Poly>>>& U) {
    const size_t n = H.base_dim, r = H.rank_A, m = H.rank_C;
    HA2Data out = H;
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) out.Q_mu_ij[mu][i][j] = H.Q_mu_ij[mu][i][j] + U[mu][i][j];
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                Poly v = H.Q_a_ij[a][i][j];
                for (size_t mu = 0; mu < m; ++mu) v -= H.Q_a_mu[a][mu] * U[mu][i][j];
                out.Q_a_ij[a][i][j] = v;
            }
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j)
                for (size_t k = 0; k < r; ++k) {
                    Poly v = H.Q_mu_ijk[mu][i][j][k];
                    for (size_t nu = 0; nu < m; ++nu) v -= H.Q_mu_nui[mu][nu][k] * U[nu][i][j];
                    for (size_t l = 0; l < r; ++l)
                        v += U[mu][l][j] * H.alg1.Q_k_ij[l][i][k] + U[mu][l][i] * H.alg1.Q_k_ij[l][j][k];
                    for (size_t a = 0; a < n; ++a) v += H.alg1.Q_a_i[a][k] * U[mu][i][j].diff(a);
                    out.Q_mu_ijk[mu][i][j][k] = v;
                }
    return out;
}

// valid (symmetry-respecting) but otherwise arbitrary order-two skew data
inline HA2Data random_ha2(Rng& rng, size_t n, size_t r, size_t m, int deg = 1, long long lo = -2, long long hi = 2) {
    HA2Data H = HA2Data::zeros(n, r, m);
    auto rp = [&] { return rng.poly(n, deg, lo, hi, 45); };
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < r; ++i) H.alg1.Q_a_i[a][i] = rp();
    for (size_t k = 0; k < r; ++k)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i + 1; j < r; ++j) {
                Poly p = rp();
                H.alg1.Q_k_ij[k][i][j] = p;
                H.alg1.Q_k_ij[k][j][i] = -p;
            }
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i; j < r; ++j) H.Q_a_ij[a][i][j] = H.Q_a_ij[a][j][i] = rp();
    for (size_t a = 0; a < n; ++a)
        for (size_t mu = 0; mu < m; ++mu) H.Q_a_mu[a][mu] = rp();
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i) H.Q_mu_i[mu][i] = rp();
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) H.Q_mu_ij[mu][i][j] = rp();
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t nu = 0; nu < m; ++nu)
            for (size_t i = 0; i < r; ++i) H.Q_mu_nui[mu][nu][i] = rp();
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i; j < r; ++j)
                for (size_t k = 0; k < r; ++k) H.Q_mu_ijk[mu][i][j][k] = H.Q_mu_ijk[mu][j][i][k] = rp();
    return H;
}

}  // namespace ha2kit::fixtures

#endif

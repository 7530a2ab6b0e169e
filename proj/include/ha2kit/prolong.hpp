#ifndef HA2KIT_PROLONG_HPP
#define HA2KIT_PROLONG_HPP

#include "ha2kit/ha2.hpp"

namespace ha2kit {

// Second-order prolongation of an (almost Lie) algebroid: the order-two HA
// on A^[2] whose core is A itself. In coordinates,
//   Q^a_ij   = hatQ^a_ij = d_b Q^a_i Q^b_j + d_b Q^a_j Q^b_i
//   Q^a_mu   = Q^a_l                (core index identified with the section index)
//   Q^mu_i   = delta
//   Q^mu_ij  = Q^l_ij               (so the chart is adapted)
//   Q^mu_nui = Q^l_{nu i}
//   Q^mu_ijk = hatQ^l_ij,k = d_a Q^l_ik Q^a_j + d_a Q^l_jk Q^a_i
inline HA2Data prolong2(const Algebroid1Data& A) {
    const size_t n = A.base_dim, r = A.rank;
    HA2Data H = HA2Data::zeros(n, r, r);
    H.alg1 = A;
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                Poly hat = Poly::zero(n);
                for (size_t b = 0; b < n; ++b)
                    hat += A.Q_a_i[a][i].diff(b) * A.Q_a_i[b][j] + A.Q_a_i[a][j].diff(b) * A.Q_a_i[b][i];
                H.Q_a_ij[a][i][j] = hat;
            }
    for (size_t a = 0; a < n; ++a)
        for (size_t mu = 0; mu < r; ++mu) H.Q_a_mu[a][mu] = A.Q_a_i[a][mu];
    for (size_t mu = 0; mu < r; ++mu) H.Q_mu_i[mu][mu] = Poly::one(n);
    for (size_t mu = 0; mu < r; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) H.Q_mu_ij[mu][i][j] = A.Q_k_ij[mu][i][j];
    for (size_t mu = 0; mu < r; ++mu)
        for (size_t nu = 0; nu < r; ++nu)
            for (size_t i = 0; i < r; ++i) H.Q_mu_nui[mu][nu][i] = A.Q_k_ij[mu][nu][i];
    for (size_t l = 0; l < r; ++l)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j)
                for (size_t k = 0; k < r; ++k) {
                    Poly hat = Poly::zero(n);
                    for (size_t a = 0; a < n; ++a)
                        hat += A.Q_k_ij[l][i][k].diff(a) * A.Q_a_i[a][j] + A.Q_k_ij[l][j][k].diff(a) * A.Q_a_i[a][i];
                    H.Q_mu_ijk[l][i][j][k] = hat;
                }
    return H;
}

// The canonical map R^2: A^[2] -> E^2 intertwines the algebroid lifts on the
// prolongation of the order-one reduction with the lifts of H. Residuals are
// checked on the core coordinates; the lower ones are matched by
// construction.
inline VerificationReport check_r2_morphism(const HA2Data& H) {
    VerificationReport rep;
    rep.title = "R2 is a morphism of lifts";
    ReportTimer t(rep);
    HA2Data P = prolong2(H.alg1);
    Chart pch = P.e2_chart();
    Chart hch = H.e2_chart();
    const size_t n = H.base_dim, r = H.rank_A, m = H.rank_C;

    // pullback along R^2: z^mu -> Q^mu_i zP^i + 1/2 Q^mu_(ij) y^i y^j,
    // x and y map identically (the prolongation chart reuses z-names for ydot)
    std::map<size_t, Poly> pull;
    size_t NP = pch.size();
    for (size_t a = 0; a < n; ++a) pull[H.xv(a)] = Poly::variable(NP, P.xv(a));
    for (size_t i = 0; i < r; ++i) pull[H.yv(i)] = Poly::variable(NP, P.yv(i));
    for (size_t mu = 0; mu < m; ++mu) {
        Poly img = Poly::zero(NP);
        for (size_t i = 0; i < r; ++i) img += detail::up(P, H.Q_mu_i[mu][i]) * Poly::variable(NP, P.zv(i));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j)
                img += Rational(1, 2) * detail::up(P, H.sym_Q_mu(mu, i, j)) * Poly::variable(NP, P.yv(i)) *
                       Poly::variable(NP, P.yv(j));
        pull[H.zv(mu)] = img;
    }
    auto pullback = [&](const Poly& p) { return p.subst(pull); };

    for (int alpha : {0, -1, -2})
        for (size_t k = 0; k < r; ++k) {
            VectorField XH = lift(H, H.frame_A(k), alpha);
            VectorField XP = lift(P, P.frame_A(k), alpha);
            for (size_t mu = 0; mu < m; ++mu) {
                Poly res = XP.apply(pullback(hch.var(H.zv(mu)))) - pullback(XH.coeff(H.zv(mu)));
                rep.add("e:R-related_VF",
                        "(k=" + std::to_string(k + 1) + ",alpha=" + std::to_string(alpha) + ",mu=" +
                            std::to_string(mu + 1) + ")",
                        res.to_string(pch.names()), res.is_zero());
            }
        }
    return rep;
}

}  // namespace ha2kit

#endif

#ifndef HA2KIT_POINT_HA_HPP
#define HA2KIT_POINT_HA_HPP

#include <vector>

#include "ha2kit/ha2.hpp"
#include "ha2kit/report.hpp"

namespace ha2kit {

// Order-two HA over a point, presented by the structure constants of the
// canonical splitting g x C: a bracket on g, the maps pa: g -> C and
// beta: /\^2 g -> C, a left action box of g on C, and the symmetric map
// omega_bar: g x Sym^2 g -> C.
struct PointHAData {
    size_t dim_g = 0;  // r
    size_t dim_C = 0;  // m
    std::vector<std::vector<std::vector<Rational>>> bracket;  // c^k_{ij} [k][i][j], skew in (i,j)
    std::vector<std::vector<Rational>> pa;                    // [mu][i]
    std::vector<std::vector<std::vector<Rational>>> beta;     // [mu][i][j], skew in (i,j)
    std::vector<std::vector<std::vector<Rational>>> box;      // [mu][i][nu]: box_{e_i} c_nu = box[mu][i][nu] c_mu
    std::vector<std::vector<std::vector<std::vector<Rational>>>> omega_bar;
    // [mu][k][i][j]: omega_bar_{e_k}(e_i, e_j), symmetric in (i,j)

    static PointHAData zeros(size_t r, size_t m) {
        PointHAData P;
        P.dim_g = r;
        P.dim_C = m;
        P.bracket.assign(r, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, Rational(0))));
        P.pa.assign(m, std::vector<Rational>(r, Rational(0)));
        P.beta.assign(m, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, Rational(0))));
        P.box.assign(m, std::vector<std::vector<Rational>>(r, std::vector<Rational>(m, Rational(0))));
        P.omega_bar.assign(m, std::vector<std::vector<std::vector<Rational>>>(
                                  r, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, Rational(0)))));
        return P;
    }

    void validate() const {
        for (size_t k = 0; k < dim_g; ++k)
            for (size_t i = 0; i < dim_g; ++i)
                for (size_t j = 0; j < dim_g; ++j)
                    if (!(bracket[k][i][j] + bracket[k][j][i]).is_zero())
                        throw InvariantViolation("point HA bracket not skew");
        for (size_t mu = 0; mu < dim_C; ++mu)
            for (size_t i = 0; i < dim_g; ++i)
                for (size_t j = 0; j < dim_g; ++j) {
                    if (!(beta[mu][i][j] + beta[mu][j][i]).is_zero())
                        throw InvariantViolation("point HA beta not skew");
                    for (size_t k = 0; k < dim_g; ++k)
                        if (omega_bar[mu][k][i][j] != omega_bar[mu][k][j][i])
                            throw InvariantViolation("point HA omega_bar not symmetric");
                }
    }
};

// Realize the point data as order-two structure functions over a zero-
// dimensional base. The canonical splitting is an adapted chart, so the
// symmetric part of Q_mu_ij vanishes and Q_mu_ijk = 2 omega_bar.
inline HA2Data point_to_ha2(const PointHAData& P) {
    HA2Data H = HA2Data::zeros(0, P.dim_g, P.dim_C);
    auto c0 = [](const Rational& q) { return Poly::constant(0, q); };
    for (size_t k = 0; k < P.dim_g; ++k)
        for (size_t i = 0; i < P.dim_g; ++i)
            for (size_t j = 0; j < P.dim_g; ++j) H.alg1.Q_k_ij[k][i][j] = c0(P.bracket[k][i][j]);
    for (size_t mu = 0; mu < P.dim_C; ++mu)
        for (size_t i = 0; i < P.dim_g; ++i) H.Q_mu_i[mu][i] = c0(P.pa[mu][i]);
    for (size_t mu = 0; mu < P.dim_C; ++mu)
        for (size_t i = 0; i < P.dim_g; ++i)
            for (size_t j = 0; j < P.dim_g; ++j) H.Q_mu_ij[mu][i][j] = c0(P.beta[mu][i][j]);
    for (size_t mu = 0; mu < P.dim_C; ++mu)
        for (size_t nu = 0; nu < P.dim_C; ++nu)
            for (size_t i = 0; i < P.dim_g; ++i) H.Q_mu_nui[mu][nu][i] = c0(-P.box[mu][i][nu]);
    for (size_t mu = 0; mu < P.dim_C; ++mu)
        for (size_t i = 0; i < P.dim_g; ++i)
            for (size_t j = 0; j < P.dim_g; ++j)
                for (size_t k = 0; k < P.dim_g; ++k)
                    H.Q_mu_ijk[mu][i][j][k] = c0(P.omega_bar[mu][k][i][j] * Rational(2));
    return H;
}

// The classification conditions for a Lie HA over a point: g is a Lie
// algebra, box makes C a g-module, pa is equivariant, beta = pa o bracket,
// and omega_bar vanishes.
inline VerificationReport check_point_lie(const PointHAData& P) {
    VerificationReport rep;
    rep.title = "Lie conditions over a point";
    ReportTimer t(rep);
    const size_t r = P.dim_g, m = P.dim_C;
    auto add = [&](const char* id, std::initializer_list<size_t> is, const Rational& res) {
        rep.add(id, detail::idx(is), res.to_string(), res.is_zero());
    };

    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j)
            for (size_t k = j + 1; k < r; ++k)
                for (size_t mm = 0; mm < r; ++mm) {
                    Rational res(0);
                    const size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
                    for (auto& c : cyc)
                        for (size_t l = 0; l < r; ++l) res += P.bracket[l][c[0]][c[1]] * P.bracket[mm][l][c[2]];
                    add("thm:HA_point.jacobi", {mm, i, j, k}, res);
                }

    for (size_t mu = 0; mu < m; ++mu)
        for (size_t nu = 0; nu < m; ++nu)
            for (size_t i = 0; i < r; ++i)
                for (size_t j = i + 1; j < r; ++j) {
                    Rational res(0);
                    for (size_t l = 0; l < r; ++l) res += P.bracket[l][i][j] * P.box[mu][l][nu];
                    for (size_t rho = 0; rho < m; ++rho)
                        res -= P.box[mu][i][rho] * P.box[rho][j][nu] - P.box[mu][j][rho] * P.box[rho][i][nu];
                    add("thm:HA_point.module", {mu, nu, i, j}, res);
                }

    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                Rational res(0);
                for (size_t l = 0; l < r; ++l) res += P.bracket[l][i][j] * P.pa[mu][l];
                for (size_t nu = 0; nu < m; ++nu) res -= P.box[mu][i][nu] * P.pa[nu][j];
                add("thm:HA_point.equivariance", {mu, i, j}, res);
            }

    for (size_t mu = 0; mu < m; ++mu)
        for (size_t k = 0; k < r; ++k)
            for (size_t i = 0; i < r; ++i)
                for (size_t j = i; j < r; ++j) add("thm:HA_point.omega_bar", {mu, k, i, j}, P.omega_bar[mu][k][i][j]);

    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i + 1; j < r; ++j) {
                Rational res = P.beta[mu][i][j];
                for (size_t l = 0; l < r; ++l) res -= P.pa[mu][l] * P.bracket[l][i][j];
                add("thm:HA_point.beta", {mu, i, j}, res);
            }
    return rep;
}

// The classification must agree with the generic order-two checkers run on
// the embedded data; disagreement would be a bug (or a convention conflict
// worth reporting).
inline bool point_equivalence_test(const PointHAData& P) {
    bool classified = check_point_lie(P).pass();
    HA2Data H = point_to_ha2(P);
    bool generic = check_al2(H).pass() && check_lie2(H).pass();
    return classified == generic;
}

}  // namespace ha2kit

#endif

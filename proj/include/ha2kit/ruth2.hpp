#ifndef HA2KIT_RUTH2_HPP
#define HA2KIT_RUTH2_HPP

#include <vector>

#include "ha2kit/structure_maps.hpp"

namespace ha2kit {

struct ShapeViolation : std::runtime_error {
    explicit ShapeViolation(const std::string& what) : std::runtime_error(what) {}
};
struct IncompatibleInput : std::runtime_error {
    explicit IncompatibleInput(const std::string& what) : std::runtime_error(what) {}
};

// Linear connection on the trivialized bundle A -> M in Christoffel form:
// nabla_{d_{x^a}} e_i = Gamma[j][a][i] e_j.
struct Connection {
    size_t base_dim = 0;
    size_t rank = 0;
    std::vector<std::vector<std::vector<Poly>>> Gamma;  // [j][a][i]

    static Connection zero(size_t n, size_t r) {
        Connection c;
        c.base_dim = n;
        c.rank = r;
        c.Gamma.assign(r, std::vector<std::vector<Poly>>(n, std::vector<Poly>(r, Poly::zero(n))));
        return c;
    }

    // nabla_X s for a polynomial vector field X on the base
    Section apply(const VectorField& X, const Section& s) const {
        if (s.size() != rank) throw RankMismatch(s.size(), rank);
        Section out(rank, Poly::zero(base_dim));
        for (size_t j = 0; j < rank; ++j) {
            Poly c = X.apply(s[j]);
            for (size_t a = 0; a < base_dim; ++a)
                for (size_t i = 0; i < rank; ++i) c += X.coeff(a) * Gamma[j][a][i] * s[i];
            out[j] = c;
        }
        return out;
    }

    bool operator==(const Connection& o) const {
        return base_dim == o.base_dim && rank == o.rank && Gamma == o.Gamma;
    }
};

// 2-term representation up to homotopy of a trivialized Lie algebroid:
// complex partial: F0 -> F1, A-connections on both terms, and a
// Hom(F1, F0)-valued 2-form K.
struct Ruth2Data {
    Algebroid1Data algebroid;
    size_t F0_rank = 0;
    size_t F1_rank = 0;
    std::vector<std::vector<Poly>> partial;              // [q][p]: pa(f_p) = partial[q][p] g_q
    std::vector<std::vector<std::vector<Poly>>> conn0;   // [q][i][p]: nabla0_{e_i} f_p = conn0[q][i][p] f_q
    std::vector<std::vector<std::vector<Poly>>> conn1;   // [q][i][p] on F1
    std::vector<std::vector<std::vector<std::vector<Poly>>>> K;  // [p][i][j][w]: K(e_i,e_j)(g_w) = K[p][i][j][w] f_p

    static Ruth2Data zeros(Algebroid1Data A, size_t p, size_t q) {
        Ruth2Data R;
        size_t n = A.base_dim, r = A.rank;
        R.algebroid = std::move(A);
        R.F0_rank = p;
        R.F1_rank = q;
        Poly z = Poly::zero(n);
        R.partial.assign(q, std::vector<Poly>(p, z));
        R.conn0.assign(p, std::vector<std::vector<Poly>>(r, std::vector<Poly>(p, z)));
        R.conn1.assign(q, std::vector<std::vector<Poly>>(r, std::vector<Poly>(q, z)));
        R.K.assign(p, std::vector<std::vector<std::vector<Poly>>>(
                          r, std::vector<std::vector<Poly>>(r, std::vector<Poly>(q, z))));
        return R;
    }

    void validate() const {
        algebroid.validate();
        for (size_t p = 0; p < F0_rank; ++p)
            for (size_t i = 0; i < algebroid.rank; ++i)
                for (size_t j = 0; j < algebroid.rank; ++j)
                    for (size_t w = 0; w < F1_rank; ++w)
                        if (K[p][i][j][w] != -K[p][j][i][w])
                            throw InvariantViolation("K is not skew in its algebroid slots");
    }

    bool operator==(const Ruth2Data& o) const {
        return algebroid == o.algebroid && F0_rank == o.F0_rank && F1_rank == o.F1_rank && partial == o.partial &&
               conn0 == o.conn0 && conn1 == o.conn1 && K == o.K;
    }
};

// Morphism data between 2-term representations over the same algebroid:
// a map of complexes (two blocks of Phi0) and the 1-form component Phi1.
struct RuthMorphism {
    std::vector<std::vector<Poly>> Phi0_deg0;            // F0' x F0
    std::vector<std::vector<Poly>> Phi0_deg1;            // F1' x F1
    std::vector<std::vector<std::vector<Poly>>> Phi1;    // [p'][i][w]: Phi1(e_i)(g_w) = Phi1[p'][i][w] f'_{p'}
};

// Full Leibniz evaluation of an A-connection stored against frames.
inline Section a_connection_apply(const Ruth2Data& R, int level, const Section& s, const Section& v) {
    const auto& theta = level == 0 ? R.conn0 : R.conn1;
    size_t fr = level == 0 ? R.F0_rank : R.F1_rank;
    if (s.size() != R.algebroid.rank) throw RankMismatch(s.size(), R.algebroid.rank);
    if (v.size() != fr) throw RankMismatch(v.size(), fr);
    VectorField X = anchor_apply(R.algebroid, s);
    Section out(fr, Poly::zero(R.algebroid.base_dim));
    for (size_t q = 0; q < fr; ++q) {
        Poly c = X.apply(v[q]);
        for (size_t i = 0; i < R.algebroid.rank; ++i)
            for (size_t p = 0; p < fr; ++p) c += s[i] * theta[q][i][p] * v[p];
        out[q] = c;
    }
    return out;
}

namespace detail {

inline Section apply_matrix(const std::vector<std::vector<Poly>>& M, const Section& v, size_t n) {
    Section out(M.size(), Poly::zero(n));
    for (size_t q = 0; q < M.size(); ++q)
        for (size_t p = 0; p < v.size(); ++p) out[q] += M[q][p] * v[p];
    return out;
}

inline Section K_apply(const Ruth2Data& R, size_t i, size_t j, const Section& w) {
    Section out(R.F0_rank, Poly::zero(R.algebroid.base_dim));
    for (size_t p = 0; p < R.F0_rank; ++p)
        for (size_t q = 0; q < R.F1_rank; ++q) out[p] += R.K[p][i][j][q] * w[q];
    return out;
}

inline Section curvature(const Ruth2Data& R, int level, size_t i, size_t j, const Section& v) {
    Section ij = a_connection_apply(R, level, R.algebroid.frame(i), a_connection_apply(R, level, R.algebroid.frame(j), v));
    Section ji = a_connection_apply(R, level, R.algebroid.frame(j), a_connection_apply(R, level, R.algebroid.frame(i), v));
    Section br = a_connection_apply(R, level, bracket_sections(R.algebroid, R.algebroid.frame(i), R.algebroid.frame(j)), v);
    return sub(sub(ij, ji), br);
}

}  // namespace detail

// Adjoint representation of an almost-Lie algebroid on the complex
// anchor: A -> TM, induced by a linear connection on A. K is the basic
// curvature.
inline Ruth2Data adjoint_rep(const Algebroid1Data& A, const Connection& nabla) {
    const size_t n = A.base_dim, r = A.rank;
    Ruth2Data R = Ruth2Data::zeros(A, r, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < r; ++i) R.partial[a][i] = A.Q_a_i[a][i];
    // nabla^A_{e_i} e_j = nabla_{anchor(e_j)} e_i + [e_i, e_j]
    for (size_t k = 0; k < r; ++k)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                Poly c = A.Q_k_ij[k][i][j];
                for (size_t a = 0; a < n; ++a) c += A.Q_a_i[a][j] * nabla.Gamma[k][a][i];
                R.conn0[k][i][j] = c;
            }
    // nabla^{TM}_{e_i} d_{x^b} = anchor(nabla_{d_b} e_i) + [anchor e_i, d_b]
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < r; ++i)
            for (size_t b = 0; b < n; ++b) {
                Poly c = -A.Q_a_i[a][i].diff(b);
                for (size_t j = 0; j < r; ++j) c += nabla.Gamma[j][b][i] * A.Q_a_i[a][j];
                R.conn1[a][i][b] = c;
            }
    // K = basic curvature of nabla
    Chart base = A.base_chart();
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            for (size_t b = 0; b < n; ++b) {
                VectorField db(base);
                db.set_coeff(b, Poly::one(n));
                Section gi(r, Poly::zero(n)), gj(r, Poly::zero(n));
                for (size_t k = 0; k < r; ++k) {
                    gi[k] = nabla.Gamma[k][b][i];
                    gj[k] = nabla.Gamma[k][b][j];
                }
                Section br = bracket_sections(A, A.frame(i), A.frame(j));
                Section t1 = nabla.apply(db, br);
                Section t2 = bracket_sections(A, gi, A.frame(j));
                Section t3 = bracket_sections(A, A.frame(i), gj);
                VectorField Xj(base), Xi(base);
                for (size_t a = 0; a < n; ++a) {
                    Xj.set_coeff(a, R.conn1[a][j][b]);
                    Xi.set_coeff(a, R.conn1[a][i][b]);
                }
                Section t4 = nabla.apply(Xj, A.frame(i));
                Section t5 = nabla.apply(Xi, A.frame(j));
                for (size_t k = 0; k < r; ++k) R.K[k][i][j][b] = t1[k] - t2[k] - t3[k] - t4[k] + t5[k];
            }
    return R;
}

// The three compatibility conditions of a 2-term representation,
// equivalent to the squared structure operator vanishing.
inline VerificationReport check_ruth(const Ruth2Data& R) {
    VerificationReport rep;
    rep.title = "2-term representation";
    ReportTimer t(rep);
    const size_t n = R.algebroid.base_dim, r = R.algebroid.rank;
    auto names = R.algebroid.base_chart().names();
    auto addsec = [&](const char* id, std::initializer_list<size_t> is, const Section& d) {
        std::string out;
        bool ok = true;
        for (const auto& c : d) {
            if (!c.is_zero()) ok = false;
            out += (out.empty() ? "" : "; ") + c.to_string(names);
        }
        rep.add(id, detail::idx(is), out.empty() ? "0" : out, ok);
    };

    auto frameF0 = [&](size_t p) {
        Section v(R.F0_rank, Poly::zero(n));
        v[p] = Poly::one(n);
        return v;
    };
    auto frameF1 = [&](size_t q) {
        Section v(R.F1_rank, Poly::zero(n));
        v[q] = Poly::one(n);
        return v;
    };

    // (i) nabla1_s . pa = pa . nabla0_s
    for (size_t i = 0; i < r; ++i)
        for (size_t p = 0; p < R.F0_rank; ++p) {
            Section lhs = a_connection_apply(R, 1, R.algebroid.frame(i), detail::apply_matrix(R.partial, frameF0(p), n));
            Section rhs = detail::apply_matrix(R.partial, a_connection_apply(R, 0, R.algebroid.frame(i), frameF0(p)), n);
            addsec("rep:pa_nabla", {i, p}, detail::sub(lhs, rhs));
        }
    // (ii) curv_{nabla0} = -K . pa  and  curv_{nabla1} = -pa . K
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j) {
            for (size_t p = 0; p < R.F0_rank; ++p) {
                Section lhs = detail::curvature(R, 0, i, j, frameF0(p));
                Section rhs = detail::K_apply(R, i, j, detail::apply_matrix(R.partial, frameF0(p), n));
                addsec("rep:curv_F0", {i, j, p}, detail::add(lhs, rhs));
            }
            for (size_t q = 0; q < R.F1_rank; ++q) {
                Section lhs = detail::curvature(R, 1, i, j, frameF1(q));
                Section rhs = detail::apply_matrix(R.partial, detail::K_apply(R, i, j, frameF1(q)), n);
                addsec("rep:curv_F1", {i, j, q}, detail::add(lhs, rhs));
            }
        }
    // (iii) d_{nabla^Hom} K = 0
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j)
            for (size_t k = j + 1; k < r; ++k)
                for (size_t q = 0; q < R.F1_rank; ++q) {
                    Section acc(R.F0_rank, Poly::zero(n));
                    const size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
                    for (auto& c : cyc) {
                        // (nabla^Hom_{c0} K(c1,c2))(g_q)
                        Section t = a_connection_apply(R, 0, R.algebroid.frame(c[0]),
                                                       detail::K_apply(R, c[1], c[2], frameF1(q)));
                        Section u = detail::K_apply(R, c[1], c[2],
                                                    a_connection_apply(R, 1, R.algebroid.frame(c[0]), frameF1(q)));
                        acc = detail::add(acc, detail::sub(t, u));
                        // - K([c0,c1], c2)(g_q), expanded over the frame
                        Section br = bracket_sections(R.algebroid, R.algebroid.frame(c[0]), R.algebroid.frame(c[1]));
                        for (size_t l = 0; l < r; ++l) {
                            Section kl = detail::K_apply(R, l, c[2], frameF1(q));
                            for (size_t p = 0; p < R.F0_rank; ++p) acc[p] -= br[l] * kl[p];
                        }
                    }
                    addsec("rep:dK", {i, j, k, q}, acc);
                }
    return rep;
}

// Morphism conditions between 2-term representations over one algebroid.
inline VerificationReport check_morphism(const RuthMorphism& Phi, const Ruth2Data& src, const Ruth2Data& dst) {
    if (!(src.algebroid == dst.algebroid))
        throw IncompatibleInput("check_morphism: source and target live over different algebroids");
    VerificationReport rep;
    rep.title = "morphism of representations";
    ReportTimer t(rep);
    const size_t n = src.algebroid.base_dim, r = src.algebroid.rank;
    auto names = src.algebroid.base_chart().names();
    if (Phi.Phi0_deg0.size() != dst.F0_rank || (dst.F0_rank && Phi.Phi0_deg0[0].size() != src.F0_rank))
        throw RankMismatch(Phi.Phi0_deg0.size(), dst.F0_rank);
    if (Phi.Phi0_deg1.size() != dst.F1_rank || (dst.F1_rank && Phi.Phi0_deg1[0].size() != src.F1_rank))
        throw RankMismatch(Phi.Phi0_deg1.size(), dst.F1_rank);
    auto addsec = [&](const char* id, std::initializer_list<size_t> is, const Section& d) {
        std::string out;
        bool ok = true;
        for (const auto& c : d) {
            if (!c.is_zero()) ok = false;
            out += (out.empty() ? "" : "; ") + c.to_string(names);
        }
        rep.add(id, detail::idx(is), out.empty() ? "0" : out, ok);
    };
    auto frame_src0 = [&](size_t p) {
        Section v(src.F0_rank, Poly::zero(n));
        v[p] = Poly::one(n);
        return v;
    };
    auto frame_src1 = [&](size_t q) {
        Section v(src.F1_rank, Poly::zero(n));
        v[q] = Poly::one(n);
        return v;
    };
    auto phi1 = [&](const Section& s, const Section& v) {
        Section out(dst.F0_rank, Poly::zero(n));
        for (size_t p = 0; p < dst.F0_rank; ++p)
            for (size_t i = 0; i < r; ++i)
                for (size_t w = 0; w < src.F1_rank; ++w) out[p] += s[i] * Phi.Phi1[p][i][w] * v[w];
        return out;
    };

    // Phi1(s)(pa e) + Phi0(nabla^{src,0}_s e) = nabla^{dst,0}_s Phi0(e)
    for (size_t i = 0; i < r; ++i)
        for (size_t p = 0; p < src.F0_rank; ++p) {
            Section e = frame_src0(p);
            Section lhs = phi1(src.algebroid.frame(i), detail::apply_matrix(src.partial, e, n));
            lhs = detail::add(lhs, detail::apply_matrix(Phi.Phi0_deg0, a_connection_apply(src, 0, src.algebroid.frame(i), e), n));
            Section rhs = a_connection_apply(dst, 0, dst.algebroid.frame(i), detail::apply_matrix(Phi.Phi0_deg0, e, n));
            addsec("i:Phi_0", {i, p}, detail::sub(rhs, lhs));
        }
    // pa(Phi1(s)(v)) + Phi0(nabla^{src,1}_s v) = nabla^{dst,1}_s Phi0(v)
    for (size_t i = 0; i < r; ++i)
        for (size_t q = 0; q < src.F1_rank; ++q) {
            Section v = frame_src1(q);
            Section lhs = detail::apply_matrix(dst.partial, phi1(src.algebroid.frame(i), v), n);
            lhs = detail::add(lhs, detail::apply_matrix(Phi.Phi0_deg1, a_connection_apply(src, 1, src.algebroid.frame(i), v), n));
            Section rhs = a_connection_apply(dst, 1, dst.algebroid.frame(i), detail::apply_matrix(Phi.Phi0_deg1, v, n));
            addsec("i:Phi_1", {i, q}, detail::sub(rhs, lhs));
        }
    // K^{dst}(s1,s2)(Phi0 v) - Phi0(K^{src}(s1,s2)(v)) - Phi1([s1,s2])(v)
    //   - Phi1(s2)(nabla^{src,1}_{s1} v) + nabla^{dst,0}_{s1}(Phi1(s2)(v))
    //   + Phi1(s1)(nabla^{src,1}_{s2} v) - nabla^{dst,0}_{s2}(Phi1(s1)(v)) = 0
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j)
            for (size_t q = 0; q < src.F1_rank; ++q) {
                Section v = frame_src1(q);
                Section acc = detail::K_apply(dst, i, j, detail::apply_matrix(Phi.Phi0_deg1, v, n));
                acc = detail::sub(acc, detail::apply_matrix(Phi.Phi0_deg0, detail::K_apply(src, i, j, v), n));
                Section br = bracket_sections(src.algebroid, src.algebroid.frame(i), src.algebroid.frame(j));
                acc = detail::sub(acc, phi1(br, v));
                acc = detail::sub(acc, phi1(src.algebroid.frame(j), a_connection_apply(src, 1, src.algebroid.frame(i), v)));
                acc = detail::add(acc, a_connection_apply(dst, 0, dst.algebroid.frame(i), phi1(src.algebroid.frame(j), v)));
                acc = detail::add(acc, phi1(src.algebroid.frame(i), a_connection_apply(src, 1, src.algebroid.frame(j), v)));
                acc = detail::sub(acc, a_connection_apply(dst, 0, dst.algebroid.frame(j), phi1(src.algebroid.frame(i), v)));
                addsec("i:Phi_2", {i, j, q}, acc);
            }
    return rep;
}

// From an order-two Lie HA to the representation on pa: A -> C together
// with the canonical morphism (id, sharpC) to the adjoint representation.
struct RuthFromHA {
    Ruth2Data ruth;
    RuthMorphism to_adjoint;
};

inline RuthFromHA ha_to_ruth(const HA2Data& H, const Connection& nabla) {
    const size_t n = H.base_dim, r = H.rank_A, m = H.rank_C;
    if (nabla.base_dim != n || nabla.rank != r) throw RankMismatch(nabla.rank, r);
    RuthFromHA out;
    Ruth2Data& R = out.ruth;
    R = Ruth2Data::zeros(H.alg1, r, m);
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i) R.partial[mu][i] = H.Q_mu_i[mu][i];
    // nabla^A as in the adjoint representation
    for (size_t k = 0; k < r; ++k)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                Poly c = H.alg1.Q_k_ij[k][i][j];
                for (size_t a = 0; a < n; ++a) c += H.alg1.Q_a_i[a][j] * nabla.Gamma[k][a][i];
                R.conn0[k][i][j] = c;
            }
    // nabla^C_s v = box_s v + pa(nabla_{sharpC v} s)
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t nu = 0; nu < m; ++nu) {
                Poly c = -H.Q_mu_nui[mu][nu][i];
                for (size_t a = 0; a < n; ++a)
                    for (size_t j = 0; j < r; ++j) c += H.Q_a_mu[a][nu] * nabla.Gamma[j][a][i] * H.Q_mu_i[mu][j];
                R.conn1[mu][i][nu] = c;
            }
    // K(s1,s2)(v) = nabla_{sharpC v}[s1,s2] - [nabla_{sharpC v}s1, s2]
    //   - [s1, nabla_{sharpC v}s2] - nabla_{sharpC(nabla^C_{s2}v)}s1
    //   + nabla_{sharpC(nabla^C_{s1}v)}s2
    Chart base = H.base_chart();
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            for (size_t nu = 0; nu < m; ++nu) {
                Section cnu = H.frame_C(nu);
                VectorField scv = struct_sharpC(H, cnu);
                Section br = bracket_sections(H.alg1, H.frame_A(i), H.frame_A(j));
                Section t1 = nabla.apply(scv, br);
                Section t2 = bracket_sections(H.alg1, nabla.apply(scv, H.frame_A(i)), H.frame_A(j));
                Section t3 = bracket_sections(H.alg1, H.frame_A(i), nabla.apply(scv, H.frame_A(j)));
                Section ncj(m, Poly::zero(n)), nci(m, Poly::zero(n));
                for (size_t mu = 0; mu < m; ++mu) {
                    ncj[mu] = R.conn1[mu][j][nu];
                    nci[mu] = R.conn1[mu][i][nu];
                }
                Section t4 = nabla.apply(struct_sharpC(H, ncj), H.frame_A(i));
                Section t5 = nabla.apply(struct_sharpC(H, nci), H.frame_A(j));
                for (size_t k = 0; k < r; ++k)
                    R.K[k][i][j][nu] = t1[k] - t2[k] - t3[k] - t4[k] + t5[k];
            }
    // canonical morphism to the adjoint representation: identity on A,
    // sharpC on the core, vanishing 1-form component
    out.to_adjoint.Phi0_deg0.assign(r, std::vector<Poly>(r, Poly::zero(n)));
    for (size_t i = 0; i < r; ++i) out.to_adjoint.Phi0_deg0[i][i] = Poly::one(n);
    out.to_adjoint.Phi0_deg1 = H.Q_a_mu;
    out.to_adjoint.Phi1.assign(r, std::vector<std::vector<Poly>>(r, std::vector<Poly>(m, Poly::zero(n))));
    return out;
}

// Rebuild the adapted order-two Lie HA from a representation on A -> C and
// a strict morphism to the adjoint representation. The reconstruction does
// not depend on the auxiliary linear connection.
inline HA2Data ruth_to_ha(const Ruth2Data& R, const RuthMorphism& Phi, const Connection& nabla) {
    const size_t n = R.algebroid.base_dim, r = R.algebroid.rank, m = R.F1_rank;
    if (R.F0_rank != r) throw ShapeViolation("ruth_to_ha: the degree-0 term must be the algebroid itself");
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            Poly want = i == j ? Poly::one(n) : Poly::zero(n);
            if (Phi.Phi0_deg0[i][j] != want)
                throw ShapeViolation("ruth_to_ha: the morphism must be the identity in degree 0");
        }
    for (const auto& block : Phi.Phi1)
        for (const auto& row : block)
            for (const auto& entry : row)
                if (!entry.is_zero()) throw ShapeViolation("ruth_to_ha: the 1-form component must vanish");
    if (!check_ruth(R).pass()) throw IncompatibleInput("ruth_to_ha: the representation conditions fail");
    if (!check_morphism(Phi, R, adjoint_rep(R.algebroid, nabla)).pass())
        throw IncompatibleInput("ruth_to_ha: the morphism conditions fail");

    HA2Data H = HA2Data::zeros(n, r, m);
    H.alg1 = R.algebroid;
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i) H.Q_mu_i[mu][i] = R.partial[mu][i];
    H.Q_a_mu = Phi.Phi0_deg1;  // sharpC
    // box_s v = nabla^C_s v - pa(nabla_{sharpC v} s); left-action sign for the
    // stored structure functions
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t nu = 0; nu < m; ++nu)
            for (size_t i = 0; i < r; ++i) {
                Poly box = R.conn1[mu][i][nu];
                for (size_t a = 0; a < n; ++a)
                    for (size_t j = 0; j < r; ++j) box -= H.Q_a_mu[a][nu] * nabla.Gamma[j][a][i] * R.partial[mu][j];
                H.Q_mu_nui[mu][nu][i] = -box;
            }
    // adapted chart: beta = pa o bracket
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                Poly c = Poly::zero(n);
                for (size_t l = 0; l < r; ++l) c += R.partial[mu][l] * H.alg1.Q_k_ij[l][i][j];
                H.Q_mu_ij[mu][i][j] = c;
            }
    // anchor block: Q^a_ij = hatQ^a_ij in the adapted chart
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                Poly hat = Poly::zero(n);
                for (size_t b = 0; b < n; ++b)
                    hat += H.alg1.Q_a_i[a][i].diff(b) * H.alg1.Q_a_i[b][j] +
                           H.alg1.Q_a_i[a][j].diff(b) * H.alg1.Q_a_i[b][i];
                H.Q_a_ij[a][i][j] = hat;
            }
    // vanishing omega pins Q_mu_ijk:
    //   Q^mu_{ij,k} = W_{ijk} - Q^nu_{ij} Q^mu_{nu k} + Q^a_k d_a Q^mu_{ij}
    //                 + Q^mu_{lj} Q^l_{ik} + Q^mu_{li} Q^l_{jk},   symmetrized in (i,j),
    // with W_{ijk} = 2 [ Q^l_{jk} Q^mu_{[il]} + Q^a_i d_a Q^l_{jk} Q^mu_l ].
    auto unsym = [&](size_t mu, size_t i, size_t j, size_t k) {
        Poly w = Poly::zero(n);
        for (size_t l = 0; l < r; ++l) {
            w += Rational(2) * H.alg1.Q_k_ij[l][j][k] * H.alt_Q_mu(mu, i, l);
            for (size_t a = 0; a < n; ++a)
                w += Rational(2) * H.alg1.Q_a_i[a][i] * H.alg1.Q_k_ij[l][j][k].diff(a) * R.partial[mu][l];
        }
        for (size_t nu = 0; nu < m; ++nu) w -= H.Q_mu_ij[nu][i][j] * H.Q_mu_nui[mu][nu][k];
        for (size_t a = 0; a < n; ++a) w += H.alg1.Q_a_i[a][k] * H.Q_mu_ij[mu][i][j].diff(a);
        for (size_t l = 0; l < r; ++l)
            w += H.Q_mu_ij[mu][l][j] * H.alg1.Q_k_ij[l][i][k] + H.Q_mu_ij[mu][l][i] * H.alg1.Q_k_ij[l][j][k];
        return w;
    };
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i; j < r; ++j)
                for (size_t k = 0; k < r; ++k) {
                    Poly q = (unsym(mu, i, j, k) + unsym(mu, j, i, k)) * Rational(1, 2);
                    H.Q_mu_ijk[mu][i][j][k] = q;
                    H.Q_mu_ijk[mu][j][i][k] = q;
                }
    return H;
}

}  // namespace ha2kit

#endif

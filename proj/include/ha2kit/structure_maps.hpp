#ifndef HA2KIT_STRUCTURE_MAPS_HPP
#define HA2KIT_STRUCTURE_MAPS_HPP

#include "ha2kit/ha2.hpp"
#include "ha2kit/random.hpp"

namespace ha2kit {

// Every structure map of an order-two HA can be evaluated two independent
// ways: through Lie brackets of algebroid lifts, or through the coordinate
// formulas on frames extended by the tensor laws. Agreement of the two
// routes is itself a checked property.
enum class Route { brackets, coords };

namespace detail {

inline VectorField core_section_field(const HA2Data& H, const Section& v) {
    if (v.size() != H.rank_C) throw RankMismatch(v.size(), H.rank_C);
    VectorField X(H.e2_chart());
    for (size_t mu = 0; mu < H.rank_C; ++mu) X.set_coeff(H.zv(mu), up(H, v[mu]));
    return X;
}

// weight -2 vertical field back to a section of the core
inline Section core_field_section(const HA2Data& H, const VectorField& X) {
    for (size_t a = 0; a < H.base_dim; ++a)
        if (!X.coeff(H.xv(a)).is_zero()) throw ShapeMismatch("not a core field: d_x part present");
    for (size_t i = 0; i < H.rank_A; ++i)
        if (!X.coeff(H.yv(i)).is_zero()) throw ShapeMismatch("not a core field: d_y part present");
    Section v(H.rank_C, Poly::zero(H.base_dim));
    for (size_t mu = 0; mu < H.rank_C; ++mu) v[mu] = down(H, X.coeff(H.zv(mu)));
    return v;
}

inline Poly sharp_scalar(const HA2Data& H, const Section& s, const Poly& f) {
    return anchor_apply(H.alg1, s).apply(f);
}

inline Section scale(const Section& v, const Poly& f) {
    Section out = v;
    for (auto& c : out) c = c * f;
    return out;
}
inline Section add(Section a, const Section& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline Section sub(Section a, const Section& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

}  // namespace detail

// d: A -> C,  d(e_i) = Q^mu_i c_mu  (half the weight -2 lift)
inline Section struct_pa(const HA2Data& H, const Section& s, Route route = Route::brackets) {
    if (s.size() != H.rank_A) throw RankMismatch(s.size(), H.rank_A);
    if (route == Route::brackets)
        return detail::core_field_section(H, lift(H, s, -2) * Rational(1, 2));
    Section v(H.rank_C, Poly::zero(H.base_dim));
    for (size_t mu = 0; mu < H.rank_C; ++mu)
        for (size_t i = 0; i < H.rank_A; ++i) v[mu] += s[i] * H.Q_mu_i[mu][i];
    return v;
}

// core anchor: C -> TM, c_mu -> Q^a_mu d_{x^a}
inline VectorField struct_sharpC(const HA2Data& H, const Section& v) {
    if (v.size() != H.rank_C) throw RankMismatch(v.size(), H.rank_C);
    VectorField X(H.base_chart());
    for (size_t a = 0; a < H.base_dim; ++a) {
        Poly c = Poly::zero(H.base_dim);
        for (size_t mu = 0; mu < H.rank_C; ++mu) c += v[mu] * H.Q_a_mu[a][mu];
        X.set_coeff(a, c);
    }
    return X;
}

// beta(s1,s2) = 1/2 [s1^<-1>, s2^<-1>]
inline Section struct_beta(const HA2Data& H, const Section& s1, const Section& s2, Route route = Route::brackets) {
    if (route == Route::brackets)
        return detail::core_field_section(
            H, vf_bracket(lift(H, s1, -1), lift(H, s2, -1)) * Rational(1, 2));
    // frames + Eq_beta
    Section out(H.rank_C, Poly::zero(H.base_dim));
    VectorField X1 = anchor_apply(H.alg1, s1);
    for (size_t j = 0; j < H.rank_A; ++j) {
        for (size_t i = 0; i < H.rank_A; ++i) {
            Poly fg = s1[i] * s2[j];
            for (size_t mu = 0; mu < H.rank_C; ++mu) out[mu] += fg * H.alt_Q_mu(mu, i, j);
            Poly g_sharpj_f = s2[j] * detail::sharp_scalar(H, H.frame_A(j), s1[i]);
            for (size_t mu = 0; mu < H.rank_C; ++mu) out[mu] -= g_sharpj_f * H.Q_mu_i[mu][i];
        }
        Poly sharp1_g = X1.apply(s2[j]);
        for (size_t mu = 0; mu < H.rank_C; ++mu) out[mu] += sharp1_g * H.Q_mu_i[mu][j];
    }
    return out;
}

// box_s v = [s^<0>, v]
inline Section struct_box(const HA2Data& H, const Section& s, const Section& v, Route route = Route::brackets) {
    if (s.size() != H.rank_A) throw RankMismatch(s.size(), H.rank_A);
    if (v.size() != H.rank_C) throw RankMismatch(v.size(), H.rank_C);
    if (route == Route::brackets)
        return detail::core_field_section(H, vf_bracket(lift(H, s, 0), detail::core_section_field(H, v)));
    // box is Leibniz in v and Eq1_box in s
    Section out(H.rank_C, Poly::zero(H.base_dim));
    VectorField sharpCv = struct_sharpC(H, v);
    for (size_t i = 0; i < H.rank_A; ++i) {
        // box_{e_i} v, then scaled by s^i
        Section bi(H.rank_C, Poly::zero(H.base_dim));
        VectorField Xi = anchor_apply(H.alg1, H.frame_A(i));
        for (size_t mu = 0; mu < H.rank_C; ++mu) {
            for (size_t nu = 0; nu < H.rank_C; ++nu) bi[mu] -= v[nu] * H.Q_mu_nui[mu][nu][i];
            bi[mu] += Xi.apply(v[mu]);
        }
        out = detail::add(out, detail::scale(bi, s[i]));
        Poly corr = sharpCv.apply(s[i]);
        for (size_t mu = 0; mu < H.rank_C; ++mu) out[mu] -= corr * H.Q_mu_i[mu][i];
    }
    return out;
}

// epsilon = sharpC . pa - sharp : A -> TM
inline VectorField struct_eps(const HA2Data& H, const Section& s) {
    return struct_sharpC(H, struct_pa(H, s, Route::coords)) - anchor_apply(H.alg1, s);
}

// psi(s1,s2)(f) = 1/2 s1^<-1> s2^<-1> ((sharp2)* fddot) - (sharp s1)(sharp s2)(f)
inline VectorField struct_psi(const HA2Data& H, const Section& s1, const Section& s2,
                              Route route = Route::brackets) {
    VectorField out(H.base_chart());
    if (route == Route::brackets) {
        VectorField L1 = lift(H, s1, -1), L2 = lift(H, s2, -1);
        VectorField A1 = anchor_apply(H.alg1, s1), A2 = anchor_apply(H.alg1, s2);
        HA2Data TM = HA2Data::t2m(H.base_dim);
        Chart tch = TM.e2_chart();
        for (size_t a = 0; a < H.base_dim; ++a) {
            Poly h = detail::sharp2_pullback(H, tch.var(2 * H.base_dim + a));  // (sharp2)* xddot^a
            Poly val = Rational(1, 2) * L1.apply(L2.apply(h));
            Poly base = detail::down(H, val);
            out.set_coeff(a, base - A1.apply(A2.apply(Poly::variable(H.base_dim, a))));
        }
        return out;
    }
    // tensorial in s1, Eq_psi in s2
    for (size_t i = 0; i < H.rank_A; ++i)
        for (size_t k = 0; k < H.rank_A; ++k) {
            Poly fg = s1[i] * s2[k];
            if (!fg.is_zero())
                for (size_t a = 0; a < H.base_dim; ++a) {
                    Poly w = H.Q_a_ij[a][i][k];
                    for (size_t mu = 0; mu < H.rank_C; ++mu) w += H.Q_mu_ij[mu][i][k] * H.Q_a_mu[a][mu];
                    for (size_t b = 0; b < H.base_dim; ++b)
                        w -= Rational(2) * H.alg1.Q_a_i[b][i] * H.alg1.Q_a_i[a][k].diff(b);
                    out.set_coeff(a, out.coeff(a) + Rational(1, 2) * fg * w);
                }
        }
    VectorField A1 = anchor_apply(H.alg1, s1);
    for (size_t k = 0; k < H.rank_A; ++k) {
        Poly g = A1.apply(s2[k]);
        if (g.is_zero()) continue;
        VectorField ek_eps = struct_eps(H, H.frame_A(k));
        out = out + ek_eps * g;
    }
    return out;
}

// delta(s1,s2,s) = 1/2 [s1^<-1>, [s2^<-1>, s^<0>]]
inline Section struct_delta(const HA2Data& H, const Section& s1, const Section& s2, const Section& s,
                            Route route = Route::brackets) {
    if (route == Route::brackets)
        return detail::core_field_section(
            H, vf_bracket(lift(H, s1, -1), vf_bracket(lift(H, s2, -1), lift(H, s, 0))) * Rational(1, 2));

    // frames carry delta(e_i,e_j,e_k) = 1/2 Qtilde^mu_{ijk} c_mu with
    //   Qtilde^mu_{ijk} = Q^mu_{ij,k} + Q^nu_{ij} Q^mu_{nu k} - Q^a_k d_a Q^mu_{ij}
    //                     - Q^mu_{lj} Q^l_{ik} - Q^mu_{li} Q^l_{jk};
    // the three slots are peeled off with the delta tensor laws.
    auto frame_delta = [&](size_t i, size_t j, size_t k) {
        Section v(H.rank_C, Poly::zero(H.base_dim));
        for (size_t mu = 0; mu < H.rank_C; ++mu) {
            Poly q = H.Q_mu_ijk[mu][i][j][k];
            for (size_t nu = 0; nu < H.rank_C; ++nu) q += H.Q_mu_ij[nu][i][j] * H.Q_mu_nui[mu][nu][k];
            for (size_t a = 0; a < H.base_dim; ++a) q -= H.alg1.Q_a_i[a][k] * H.Q_mu_ij[mu][i][j].diff(a);
            for (size_t l = 0; l < H.rank_A; ++l)
                q -= H.Q_mu_ij[mu][l][j] * H.alg1.Q_k_ij[l][i][k] + H.Q_mu_ij[mu][l][i] * H.alg1.Q_k_ij[l][j][k];
            v[mu] = Rational(1, 2) * q;
        }
        return v;
    };
    auto delta_1 = [&](const Section& a1, size_t j, size_t k) {
        // delta(a1, e_j, e_k) via Eq1_delta
        Section out(H.rank_C, Poly::zero(H.base_dim));
        Section br_kj = bracket_sections(H.alg1, H.frame_A(k), H.frame_A(j));
        VectorField sharp_br = anchor_apply(H.alg1, br_kj);
        for (size_t i = 0; i < H.rank_A; ++i) {
            if (a1[i].is_zero()) continue;
            out = detail::add(out, detail::scale(frame_delta(i, j, k), a1[i]));
            out = detail::add(out, detail::scale(struct_pa(H, H.frame_A(i), Route::coords), sharp_br.apply(a1[i])));
        }
        return out;
    };
    auto delta_2 = [&](const Section& a1, const Section& a2, size_t k) {
        // delta(a1, a2, e_k) via Eq2_delta
        Section out(H.rank_C, Poly::zero(H.base_dim));
        VectorField Ak = anchor_apply(H.alg1, H.frame_A(k));
        VectorField A1 = anchor_apply(H.alg1, a1);
        Section br_1k = bracket_sections(H.alg1, a1, H.frame_A(k));
        VectorField sharp_br = anchor_apply(H.alg1, br_1k);
        for (size_t j = 0; j < H.rank_A; ++j) {
            const Poly& g = a2[j];
            if (g.is_zero()) continue;
            out = detail::add(out, detail::scale(delta_1(a1, j, k), g));
            out = detail::sub(out, detail::scale(struct_beta(H, a1, H.frame_A(j), Route::coords), Ak.apply(g)));
            out = detail::sub(out, detail::scale(struct_box(H, H.frame_A(k), struct_pa(H, H.frame_A(j), Route::coords),
                                                            Route::coords),
                                                 A1.apply(g)));
            Poly w = sharp_br.apply(g) + Ak.apply(A1.apply(g));
            out = detail::sub(out, detail::scale(struct_pa(H, H.frame_A(j), Route::coords), w));
        }
        return out;
    };
    Section out(H.rank_C, Poly::zero(H.base_dim));
    VectorField A1 = anchor_apply(H.alg1, s1), A2 = anchor_apply(H.alg1, s2);
    VectorField psi12 = struct_psi(H, s1, s2, Route::coords);
    for (size_t k = 0; k < H.rank_A; ++k) {
        const Poly& h = s[k];
        if (h.is_zero()) continue;
        out = detail::add(out, detail::scale(delta_2(s1, s2, k), h));
        out = detail::add(out, detail::scale(struct_beta(H, s2, H.frame_A(k), Route::coords), A1.apply(h)));
        out = detail::add(out, detail::scale(struct_beta(H, s1, H.frame_A(k), Route::coords), A2.apply(h)));
        Poly w = A1.apply(A2.apply(h)) + psi12.apply(h);
        out = detail::add(out, detail::scale(struct_pa(H, H.frame_A(k), Route::coords), w));
    }
    return out;
}

// omega(s1,s2,s) = delta(s1,s2,s) - beta(s1,[s2,s])
inline Section struct_omega(const HA2Data& H, const Section& s1, const Section& s2, const Section& s,
                            Route route = Route::brackets) {
    Section br = bracket_sections(H.alg1, s2, s);
    return detail::sub(struct_delta(H, s1, s2, s, route), struct_beta(H, s1, br, route));
}

// omegabar_s(s1,s2) = symmetrization of omega(.,.,s) in the first two slots
inline Section struct_omega_sym(const HA2Data& H, const Section& s, const Section& s1, const Section& s2,
                                Route route = Route::brackets) {
    Section a = struct_omega(H, s1, s2, s, route);
    Section b = struct_omega(H, s2, s1, s, route);
    Section out = detail::add(a, b);
    for (auto& c : out) c = c * Rational(1, 2);
    return out;
}

// eps0(s1,s2) = box_{s1} pa(s2) - pa([s1,s2]) ;  half the (0,-2) bracket defect
inline Section struct_eps0(const HA2Data& H, const Section& s1, const Section& s2, Route route = Route::brackets) {
    if (route == Route::brackets) {
        VectorField d = vf_bracket(lift(H, s1, 0), lift(H, s2, -2)) - lift(H, bracket_sections(H.alg1, s1, s2), -2);
        return detail::core_field_section(H, d * Rational(1, 2));
    }
    Section out = struct_box(H, s1, struct_pa(H, s2, Route::coords), Route::coords);
    return detail::sub(out, struct_pa(H, bracket_sections(H.alg1, s1, s2), Route::coords));
}

// eps1(s1,s2) = beta(s1,s2) - pa([s1,s2]) ;  half the (-1,-1) bracket defect
inline Section struct_eps1(const HA2Data& H, const Section& s1, const Section& s2, Route route = Route::brackets) {
    if (route == Route::brackets) {
        VectorField d =
            vf_bracket(lift(H, s1, -1), lift(H, s2, -1)) - lift(H, bracket_sections(H.alg1, s1, s2), -2);
        return detail::core_field_section(H, d * Rational(1, 2));
    }
    Section out = struct_beta(H, s1, s2, Route::coords);
    return detail::sub(out, struct_pa(H, bracket_sections(H.alg1, s1, s2), Route::coords));
}

// ---------------------------------------------------------------------------
// Agreement of the two evaluation routes on frame sections.
// ---------------------------------------------------------------------------

inline VerificationReport structure_map_agreement(const HA2Data& H) {
    VerificationReport rep;
    rep.title = "structure-map route agreement";
    ReportTimer t(rep);
    auto names = H.base_chart().names();
    auto addsec = [&](const char* id, std::initializer_list<size_t> is, const Section& a, const Section& b) {
        const Section d = detail::sub(a, b);
        std::string r;
        bool ok = true;
        for (const auto& c : d) {
            if (!c.is_zero()) ok = false;
            r += (r.empty() ? "" : "; ") + c.to_string(names);
        }
        rep.add(id, detail::idx(is), r.empty() ? "0" : r, ok);
    };
    auto addvf = [&](const char* id, std::initializer_list<size_t> is, const VectorField& a, const VectorField& b) {
        VectorField d = a - b;
        rep.add(id, detail::idx(is), d.to_string(), d.is_zero());
    };
    const size_t r = H.rank_A, m = H.rank_C;
    for (size_t i = 0; i < r; ++i)
        addsec("df:pa", {i}, struct_pa(H, H.frame_A(i), Route::brackets), struct_pa(H, H.frame_A(i), Route::coords));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            addsec("df:beta", {i, j}, struct_beta(H, H.frame_A(i), H.frame_A(j), Route::brackets),
                   struct_beta(H, H.frame_A(i), H.frame_A(j), Route::coords));
            addvf("df:psi", {i, j}, struct_psi(H, H.frame_A(i), H.frame_A(j), Route::brackets),
                  struct_psi(H, H.frame_A(i), H.frame_A(j), Route::coords));
            addsec("df:eps_k", {0, i, j}, struct_eps0(H, H.frame_A(i), H.frame_A(j), Route::brackets),
                   struct_eps0(H, H.frame_A(i), H.frame_A(j), Route::coords));
            addsec("df:eps_k", {1, i, j}, struct_eps1(H, H.frame_A(i), H.frame_A(j), Route::brackets),
                   struct_eps1(H, H.frame_A(i), H.frame_A(j), Route::coords));
        }
    for (size_t i = 0; i < r; ++i)
        for (size_t nu = 0; nu < m; ++nu)
            addsec("df:gamma", {i, nu}, struct_box(H, H.frame_A(i), H.frame_C(nu), Route::brackets),
                   struct_box(H, H.frame_A(i), H.frame_C(nu), Route::coords));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            for (size_t k = 0; k < r; ++k) {
                addsec("e:delta_coord", {i, j, k},
                       struct_delta(H, H.frame_A(i), H.frame_A(j), H.frame_A(k), Route::brackets),
                       struct_delta(H, H.frame_A(i), H.frame_A(j), H.frame_A(k), Route::coords));
                addsec("e:bar_omega", {k, i, j},
                       struct_omega_sym(H, H.frame_A(k), H.frame_A(i), H.frame_A(j), Route::brackets),
                       struct_omega_sym(H, H.frame_A(k), H.frame_A(i), H.frame_A(j), Route::coords));
            }
    return rep;
}

// ---------------------------------------------------------------------------
// Tensor laws of the structure maps (skew HA), checked symbolically with
// pseudo-random polynomial coefficients. All evaluations go through the
// bracket route, so these laws pin down every prefactor in the lift
// machinery.
// ---------------------------------------------------------------------------

inline VerificationReport tensor_law_suite(const HA2Data& H, size_t trials, uint64_t seed) {
    VerificationReport rep;
    rep.title = "tensor laws";
    ReportTimer t(rep);
    Rng rng(seed);
    auto names = H.base_chart().names();
    const size_t r = H.rank_A, m = H.rank_C, n = H.base_dim;
    if (r == 0) return rep;

    auto addsec = [&](const char* id, size_t trial, const Section& lhs, const Section& rhs) {
        Section d = detail::sub(lhs, rhs);
        std::string out;
        bool ok = true;
        for (const auto& c : d) {
            if (!c.is_zero()) ok = false;
            out += (out.empty() ? "" : "; ") + c.to_string(names);
        }
        rep.add(id, "(trial " + std::to_string(trial) + ")", out.empty() ? "0" : out, ok);
    };
    auto addvf = [&](const char* id, size_t trial, const VectorField& lhs, const VectorField& rhs) {
        VectorField d = lhs - rhs;
        rep.add(id, "(trial " + std::to_string(trial) + ")", d.to_string(), d.is_zero());
    };

    for (size_t trial = 1; trial <= trials; ++trial) {
        Poly f = rng.poly(n, 2, -3, 3);
        if (f.is_zero()) f = Poly::one(n);
        size_t i = rng.below(r), j = rng.below(r), k = rng.below(r);
        size_t nu = m ? rng.below(m) : 0;
        Section ei = H.frame_A(i), ej = H.frame_A(j), ek = H.frame_A(k);
        Section fej = detail::scale(ej, f), fei = detail::scale(ei, f), fek = detail::scale(ek, f);
        VectorField sharp_i = anchor_apply(H.alg1, ei), sharp_j = anchor_apply(H.alg1, ej),
                    sharp_k = anchor_apply(H.alg1, ek);

        // Eq_beta: beta(e_i, f e_j) = f beta(e_i,e_j) + sharp(e_i)(f) pa(e_j)
        addsec("Eq_beta", trial, struct_beta(H, ei, fej),
               detail::add(detail::scale(struct_beta(H, ei, ej), f),
                           detail::scale(struct_pa(H, ej), sharp_i.apply(f))));

        if (m) {
            Section cnu = H.frame_C(nu), fcnu = detail::scale(cnu, f);
            // Eq1_box: box_{f e_i} c = f box_{e_i} c - sharpC(c)(f) pa(e_i)
            addsec("Eq_box1", trial, struct_box(H, fei, cnu),
                   detail::sub(detail::scale(struct_box(H, ei, cnu), f),
                               detail::scale(struct_pa(H, ei), struct_sharpC(H, cnu).apply(f))));
            // Eq2_box: box_{e_i}(f c) = f box_{e_i} c + sharp(e_i)(f) c
            addsec("Eq_box2", trial, struct_box(H, ei, fcnu),
                   detail::add(detail::scale(struct_box(H, ei, cnu), f), detail::scale(cnu, sharp_i.apply(f))));
        }

        // Eq1_delta: delta(f e_i, e_j, e_k) = f delta + sharp([e_k,e_j])(f) pa(e_i)
        {
            Section br = bracket_sections(H.alg1, ek, ej);
            addsec("Eq_delta1", trial, struct_delta(H, fei, ej, ek),
                   detail::add(detail::scale(struct_delta(H, ei, ej, ek), f),
                               detail::scale(struct_pa(H, ei), anchor_apply(H.alg1, br).apply(f))));
        }
        // Eq2_delta: delta(e_i, f e_j, e_k) = f delta - sharp(e_k)(f) beta(e_i,e_j)
        //            - sharp(e_i)(f) box_{e_k} pa(e_j) - (sharp[e_i,e_k] + sharp e_k . sharp e_i)(f) pa(e_j)
        {
            Section br = bracket_sections(H.alg1, ei, ek);
            Poly w = anchor_apply(H.alg1, br).apply(f) + sharp_k.apply(sharp_i.apply(f));
            Section rhs = detail::scale(struct_delta(H, ei, ej, ek), f);
            rhs = detail::sub(rhs, detail::scale(struct_beta(H, ei, ej), sharp_k.apply(f)));
            rhs = detail::sub(rhs, detail::scale(struct_box(H, ek, struct_pa(H, ej)), sharp_i.apply(f)));
            rhs = detail::sub(rhs, detail::scale(struct_pa(H, ej), w));
            addsec("Eq_delta2", trial, struct_delta(H, ei, fej, ek), rhs);
        }
        // Eq3_delta: delta(e_i, e_j, f e_k) = f delta + sharp(e_i)(f) beta(e_j,e_k)
        //            + sharp(e_j)(f) beta(e_i,e_k) + (sharp e_i . sharp e_j + psi(e_i,e_j))(f) pa(e_k)
        {
            Poly w = sharp_i.apply(sharp_j.apply(f)) + struct_psi(H, ei, ej).apply(f);
            Section rhs = detail::scale(struct_delta(H, ei, ej, ek), f);
            rhs = detail::add(rhs, detail::scale(struct_beta(H, ej, ek), sharp_i.apply(f)));
            rhs = detail::add(rhs, detail::scale(struct_beta(H, ei, ek), sharp_j.apply(f)));
            rhs = detail::add(rhs, detail::scale(struct_pa(H, ek), w));
            addsec("Eq_delta3", trial, struct_delta(H, ei, ej, fek), rhs);
        }
        // Eq1_omegabar: omegabar_{e_k}(f e_i, e_j) = f omegabar_{e_k}(e_i,e_j)
        //   - 1/2 sharp(e_j)(f) eps0(e_k,e_i) + 1/2 (sharp[e_k,e_j] - [sharp e_k, sharp e_j])(f) pa(e_i)
        {
            Section br = bracket_sections(H.alg1, ek, ej);
            Poly w = anchor_apply(H.alg1, br).apply(f) - vf_bracket(sharp_k, sharp_j).apply(f);
            Section rhs = detail::scale(struct_omega_sym(H, ek, ei, ej), f);
            rhs = detail::sub(rhs, detail::scale(struct_eps0(H, ek, ei), Rational(1, 2) * sharp_j.apply(f)));
            rhs = detail::add(rhs, detail::scale(struct_pa(H, ei), Rational(1, 2) * w));
            addsec("Eq_omegabar1", trial, struct_omega_sym(H, ek, fei, ej), rhs);
        }
        // Eq2_omegabar: omegabar_{f e_k}(e_i, e_j) = f omegabar_{e_k}(e_i,e_j)
        //            + 1/2 (sharp(e_i)(f) eps1(e_j,e_k) + sharp(e_j)(f) eps1(e_i,e_k))
        //            + psibar(e_i,e_j)(f) pa(e_k)
        {
            VectorField psis = (struct_psi(H, ei, ej) + struct_psi(H, ej, ei)) * Rational(1, 2);
            Section rhs = detail::scale(struct_omega_sym(H, ek, ei, ej), f);
            rhs = detail::add(rhs, detail::scale(struct_eps1(H, ej, ek), Rational(1, 2) * sharp_i.apply(f)));
            rhs = detail::add(rhs, detail::scale(struct_eps1(H, ei, ek), Rational(1, 2) * sharp_j.apply(f)));
            rhs = detail::add(rhs, detail::scale(struct_pa(H, ek), psis.apply(f)));
            addsec("Eq_omegabar2", trial, struct_omega_sym(H, fek, ei, ej), rhs);
        }
        // Eq_psi: psi(e_i, f e_j) = f psi(e_i,e_j) + sharp(e_i)(f) eps(e_j)
        addvf("Eq_psi", trial, struct_psi(H, ei, fej),
              struct_psi(H, ei, ej) * f + struct_eps(H, ej) * sharp_i.apply(f));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Structure-map consequences of the almost-Lie and Lie axioms.
// ---------------------------------------------------------------------------

inline VerificationReport check_al_consequences(const HA2Data& H) {
    VerificationReport rep;
    rep.title = "almost-Lie consequences";
    ReportTimer t(rep);
    const size_t r = H.rank_A, m = H.rank_C;
    for (size_t i = 0; i < r; ++i) {
        VectorField e = struct_eps(H, H.frame_A(i));
        rep.add("AL_pa", detail::idx({i}), e.to_string(), e.is_zero());
    }
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            VectorField p = struct_psi(H, H.frame_A(i), H.frame_A(j));
            rep.add("AL_psi", detail::idx({i, j}), p.to_string(), p.is_zero());
        }
    for (size_t i = 0; i < r; ++i)
        for (size_t nu = 0; nu < m; ++nu) {
            VectorField lhs = struct_sharpC(H, struct_box(H, H.frame_A(i), H.frame_C(nu)));
            VectorField rhs =
                vf_bracket(anchor_apply(H.alg1, H.frame_A(i)), struct_sharpC(H, H.frame_C(nu)));
            VectorField d = lhs - rhs;
            rep.add("AL_box", detail::idx({i, nu}), d.to_string(), d.is_zero());
        }
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            for (size_t k = 0; k < r; ++k) {
                VectorField d = struct_sharpC(H, struct_omega(H, H.frame_A(i), H.frame_A(j), H.frame_A(k)));
                rep.add("AL_omega", detail::idx({i, j, k}), d.to_string(), d.is_zero());
            }
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j) {
            VectorField lhs = struct_sharpC(H, struct_beta(H, H.frame_A(i), H.frame_A(j)));
            VectorField rhs = anchor_apply(H.alg1, bracket_sections(H.alg1, H.frame_A(i), H.frame_A(j)));
            VectorField d = lhs - rhs;
            rep.add("AL_beta", detail::idx({i, j}), d.to_string(), d.is_zero());
        }
    return rep;
}

inline VerificationReport check_lie_consequences(const HA2Data& H) {
    VerificationReport rep;
    rep.title = "Lie consequences";
    ReportTimer t(rep);
    auto names = H.base_chart().names();
    auto addsec = [&](const char* id, std::initializer_list<size_t> is, const Section& d) {
        std::string out;
        bool ok = true;
        for (const auto& c : d) {
            if (!c.is_zero()) ok = false;
            out += (out.empty() ? "" : "; ") + c.to_string(names);
        }
        rep.add(id, detail::idx(is), out.empty() ? "0" : out, ok);
    };
    const size_t r = H.rank_A, m = H.rank_C;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            addsec("Lie_pa", {i, j}, struct_eps0(H, H.frame_A(i), H.frame_A(j)));
            addsec("Lie_beta", {i, j}, struct_eps1(H, H.frame_A(i), H.frame_A(j)));
        }
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            for (size_t k = 0; k < r; ++k) addsec("Lie_omega", {i, j, k}, struct_omega(H, H.frame_A(i), H.frame_A(j), H.frame_A(k)));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            for (size_t nu = 0; nu < m; ++nu) {
                Section br = bracket_sections(H.alg1, H.frame_A(i), H.frame_A(j));
                Section lhs = struct_box(H, br, H.frame_C(nu));
                Section rhs = detail::sub(struct_box(H, H.frame_A(i), struct_box(H, H.frame_A(j), H.frame_C(nu))),
                                          struct_box(H, H.frame_A(j), struct_box(H, H.frame_A(i), H.frame_C(nu))));
                addsec("Lie_box", {i, j, nu}, detail::sub(lhs, rhs));
            }
    return rep;
}

}  // namespace ha2kit

#endif

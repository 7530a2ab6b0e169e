#ifndef HA2KIT_ALGEBROID1_HPP
#define HA2KIT_ALGEBROID1_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "ha2kit/chart.hpp"
#include "ha2kit/report.hpp"

namespace ha2kit {

struct RankMismatch : std::runtime_error {
    RankMismatch(size_t got, size_t want)
        : std::runtime_error("expected rank " + std::to_string(want) + ", got " + std::to_string(got)) {}
};
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

// Section of a trivialized bundle: component polynomials over the base
// variables x1..xn.
using Section = std::vector<Poly>;

// Order-one skew algebroid in a fixed trivialization:
//   anchor(e_i) = Q_a_i[a][i] d_{x^a},   [e_i, e_j] = Q_k_ij[k][i][j] e_k.
// All entries are polynomials in the base variables.
struct Algebroid1Data {
    size_t base_dim = 0;
    size_t rank = 0;
    std::vector<std::vector<Poly>> Q_a_i;               // [a][i]
    std::vector<std::vector<std::vector<Poly>>> Q_k_ij; // [k][i][j], skew in (i,j)

    static Algebroid1Data zeros(size_t n, size_t r) {
        Algebroid1Data A;
        A.base_dim = n;
        A.rank = r;
        Poly z = Poly::zero(n);
        A.Q_a_i.assign(n, std::vector<Poly>(r, z));
        A.Q_k_ij.assign(r, std::vector<std::vector<Poly>>(r, std::vector<Poly>(r, z)));
        return A;
    }

    Chart base_chart() const { return Chart::graded(base_dim, {}); }

    Section frame(size_t i) const {
        Section s(rank, Poly::zero(base_dim));
        s.at(i) = Poly::one(base_dim);
        return s;
    }

    void validate() const {
        for (size_t k = 0; k < rank; ++k)
            for (size_t i = 0; i < rank; ++i)
                for (size_t j = 0; j < rank; ++j)
                    if (Q_k_ij[k][i][j] != -Q_k_ij[k][j][i])
                        throw InvariantViolation("bracket constants not skew at Q_k_ij[" + std::to_string(k + 1) +
                                                 "][" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
    }

    bool operator==(const Algebroid1Data& o) const {
        return base_dim == o.base_dim && rank == o.rank && Q_a_i == o.Q_a_i && Q_k_ij == o.Q_k_ij;
    }
};

// anchor(s) = s^i Q^a_i d_{x^a}
inline VectorField anchor_apply(const Algebroid1Data& A, const Section& s) {
    if (s.size() != A.rank) throw RankMismatch(s.size(), A.rank);
    VectorField X(A.base_chart());
    for (size_t a = 0; a < A.base_dim; ++a) {
        Poly c = Poly::zero(A.base_dim);
        for (size_t i = 0; i < A.rank; ++i) c += s[i] * A.Q_a_i[a][i];
        X.set_coeff(a, c);
    }
    return X;
}

// [s1,s2]^k = s1^i s2^j Q^k_{ij} + anchor(s1)(s2^k) - anchor(s2)(s1^k)
inline Section bracket_sections(const Algebroid1Data& A, const Section& s1, const Section& s2) {
    if (s1.size() != A.rank) throw RankMismatch(s1.size(), A.rank);
    if (s2.size() != A.rank) throw RankMismatch(s2.size(), A.rank);
    VectorField X1 = anchor_apply(A, s1);
    VectorField X2 = anchor_apply(A, s2);
    Section out(A.rank, Poly::zero(A.base_dim));
    for (size_t k = 0; k < A.rank; ++k) {
        Poly c = Poly::zero(A.base_dim);
        for (size_t i = 0; i < A.rank; ++i)
            for (size_t j = 0; j < A.rank; ++j) c += s1[i] * s2[j] * A.Q_k_ij[k][i][j];
        c += X1.apply(s2[k]) - X2.apply(s1[k]);
        out[k] = c;
    }
    return out;
}

namespace detail {
inline std::string idx(std::initializer_list<size_t> is) {
    std::string out = "(";
    bool first = true;
    for (size_t i : is) {
        if (!first) out += ",";
        out += std::to_string(i + 1);
        first = false;
    }
    return out + ")";
}
}  // namespace detail

// Jacobiator of the section bracket on frame triples. This is the full
// section-level Jacobiator, so non-constant bracket functions pick up their
// anchor-derivative terms.
inline VerificationReport check_jacobi(const Algebroid1Data& A) {
    VerificationReport rep;
    rep.title = "jacobi";
    ReportTimer t(rep);
    auto names = A.base_chart().names();
    for (size_t i = 0; i < A.rank; ++i)
        for (size_t j = i + 1; j < A.rank; ++j)
            for (size_t k = j + 1; k < A.rank; ++k) {
                Section jac = bracket_sections(A, bracket_sections(A, A.frame(i), A.frame(j)), A.frame(k));
                Section t2 = bracket_sections(A, bracket_sections(A, A.frame(j), A.frame(k)), A.frame(i));
                Section t3 = bracket_sections(A, bracket_sections(A, A.frame(k), A.frame(i)), A.frame(j));
                for (size_t m = 0; m < A.rank; ++m) {
                    Poly r = jac[m] + t2[m] + t3[m];
                    rep.add("e:coord_Jac", detail::idx({m, i, j, k}), r.to_string(names), r.is_zero());
                }
            }
    return rep;
}

// Anchor is a bracket morphism: Q^a_k Q^k_{ij} = Q^b_i d_b Q^a_j - Q^b_j d_b Q^a_i.
inline VerificationReport check_al1(const Algebroid1Data& A) {
    VerificationReport rep;
    rep.title = "almost-Lie (order one)";
    ReportTimer t(rep);
    auto names = A.base_chart().names();
    for (size_t a = 0; a < A.base_dim; ++a)
        for (size_t i = 0; i < A.rank; ++i)
            for (size_t j = i + 1; j < A.rank; ++j) {
                Poly lhs = Poly::zero(A.base_dim);
                for (size_t k = 0; k < A.rank; ++k) lhs += A.Q_a_i[a][k] * A.Q_k_ij[k][i][j];
                Poly check = Poly::zero(A.base_dim);
                for (size_t b = 0; b < A.base_dim; ++b)
                    check += A.Q_a_i[b][i] * A.Q_a_i[a][j].diff(b) - A.Q_a_i[b][j] * A.Q_a_i[a][i].diff(b);
                Poly r = lhs - check;
                rep.add("e:QakQk_ij", detail::idx({a, i, j}), r.to_string(names), r.is_zero());
            }
    return rep;
}

}  // namespace ha2kit

#endif

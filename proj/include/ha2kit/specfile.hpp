#ifndef HA2KIT_SPECFILE_HPP
#define HA2KIT_SPECFILE_HPP

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ha2kit/point_ha.hpp"
#include "ha2kit/ruth2.hpp"

namespace ha2kit::specfile {

using json = nlohmann::ordered_json;

struct SpecFileError : std::runtime_error {
    explicit SpecFileError(const std::string& what) : std::runtime_error(what) {}
};

enum class Kind { algebroid1, ha2, point_ha, ruth2, connection };

inline std::string kind_name(Kind k) {
    switch (k) {
        case Kind::algebroid1: return "algebroid1";
        case Kind::ha2: return "ha2";
        case Kind::point_ha: return "point_ha";
        case Kind::ruth2: return "ruth2";
        case Kind::connection: return "connection";
    }
    return "?";
}

namespace detail {

inline std::vector<std::string> base_names(size_t n) {
    std::vector<std::string> v;
    for (size_t a = 1; a <= n; ++a) v.push_back("x" + std::to_string(a));
    return v;
}

inline size_t require_dim(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw SpecFileError(std::string("missing or invalid dimension field '") + key + "'");
    return j[key].get<size_t>();
}

// nested lists of expression strings; `shape` gives the expected extents
template <typename Assign>
void parse_grid(const json& j, const char* key, const std::vector<size_t>& shape,
                const std::vector<std::string>& names, Assign assign) {
    if (!j.contains(key)) throw SpecFileError(std::string("missing structure-function array '") + key + "'");
    std::vector<size_t> index(shape.size(), 0);
    std::function<void(const json&, size_t)> walk = [&](const json& node, size_t depth) {
        std::string where = key;
        for (size_t d = 0; d < depth; ++d) where += "[" + std::to_string(index[d] + 1) + "]";
        if (depth == shape.size()) {
            if (!node.is_string()) throw SpecFileError(where + ": expected an expression string");
            try {
                assign(index, poly_parse(node.get<std::string>(), names));
            } catch (const std::exception& e) {
                throw SpecFileError(where + ": " + e.what());
            }
            return;
        }
        if (!node.is_array() || node.size() != shape[depth])
            throw SpecFileError(where + ": expected an array of length " + std::to_string(shape[depth]));
        for (size_t i = 0; i < shape[depth]; ++i) {
            index[depth] = i;
            walk(node[i], depth + 1);
        }
    };
    walk(j[key], 0);
}

template <typename Value>
json dump_grid(const std::vector<size_t>& shape, Value value) {
    std::vector<size_t> index(shape.size(), 0);
    std::function<json(size_t)> walk = [&](size_t depth) -> json {
        if (depth == shape.size()) return value(index);
        json arr = json::array();
        for (size_t i = 0; i < shape[depth]; ++i) {
            index[depth] = i;
            arr.push_back(walk(depth + 1));
        }
        return arr;
    };
    return walk(0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// algebroid1
// ---------------------------------------------------------------------------

inline json to_json(const Algebroid1Data& A) {
    auto names = detail::base_names(A.base_dim);
    json j;
    j["kind"] = "algebroid1";
    j["base_dim"] = A.base_dim;
    j["rank_A"] = A.rank;
    j["Q_a_i"] = detail::dump_grid({A.base_dim, A.rank},
                                   [&](const std::vector<size_t>& ix) { return A.Q_a_i[ix[0]][ix[1]].to_string(names); });
    j["Q_k_ij"] = detail::dump_grid({A.rank, A.rank, A.rank}, [&](const std::vector<size_t>& ix) {
        return A.Q_k_ij[ix[0]][ix[1]][ix[2]].to_string(names);
    });
    return j;
}

inline Algebroid1Data algebroid1_from_json(const json& j) {
    size_t n = detail::require_dim(j, "base_dim");
    size_t r = detail::require_dim(j, "rank_A");
    Algebroid1Data A = Algebroid1Data::zeros(n, r);
    auto names = detail::base_names(n);
    detail::parse_grid(j, "Q_a_i", {n, r}, names,
                       [&](const std::vector<size_t>& ix, Poly p) { A.Q_a_i[ix[0]][ix[1]] = std::move(p); });
    detail::parse_grid(j, "Q_k_ij", {r, r, r}, names,
                       [&](const std::vector<size_t>& ix, Poly p) { A.Q_k_ij[ix[0]][ix[1]][ix[2]] = std::move(p); });
    try {
        A.validate();
    } catch (const std::exception& e) {
        throw SpecFileError(e.what());
    }
    return A;
}

// ---------------------------------------------------------------------------
// ha2
// ---------------------------------------------------------------------------

inline json to_json(const HA2Data& H) {
    auto names = detail::base_names(H.base_dim);
    const size_t n = H.base_dim, r = H.rank_A, m = H.rank_C;
    json j;
    j["kind"] = "ha2";
    j["base_dim"] = n;
    j["rank_A"] = r;
    j["rank_C"] = m;
    // informational chart block; validated against the dimensions on read
    Chart ch = H.e2_chart();
    j["chart"] = json{{"variables", ch.names()}, {"weights", ch.weights()}};
    auto grid = [&](const std::vector<size_t>& shape, auto get) { return detail::dump_grid(shape, get); };
    j["Q_a_i"] = grid({n, r}, [&](const std::vector<size_t>& ix) { return H.alg1.Q_a_i[ix[0]][ix[1]].to_string(names); });
    j["Q_k_ij"] = grid({r, r, r}, [&](const std::vector<size_t>& ix) {
        return H.alg1.Q_k_ij[ix[0]][ix[1]][ix[2]].to_string(names);
    });
    j["Q_a_ij"] =
        grid({n, r, r}, [&](const std::vector<size_t>& ix) { return H.Q_a_ij[ix[0]][ix[1]][ix[2]].to_string(names); });
    j["Q_a_mu"] = grid({n, m}, [&](const std::vector<size_t>& ix) { return H.Q_a_mu[ix[0]][ix[1]].to_string(names); });
    j["Q_mu_i"] = grid({m, r}, [&](const std::vector<size_t>& ix) { return H.Q_mu_i[ix[0]][ix[1]].to_string(names); });
    j["Q_mu_ij"] =
        grid({m, r, r}, [&](const std::vector<size_t>& ix) { return H.Q_mu_ij[ix[0]][ix[1]][ix[2]].to_string(names); });
    j["Q_mu_nui"] = grid(
        {m, m, r}, [&](const std::vector<size_t>& ix) { return H.Q_mu_nui[ix[0]][ix[1]][ix[2]].to_string(names); });
    j["Q_mu_ijk"] = grid({m, r, r, r}, [&](const std::vector<size_t>& ix) {
        return H.Q_mu_ijk[ix[0]][ix[1]][ix[2]][ix[3]].to_string(names);
    });
    return j;
}

inline HA2Data ha2_from_json(const json& j) {
    size_t n = detail::require_dim(j, "base_dim");
    size_t r = detail::require_dim(j, "rank_A");
    size_t m = detail::require_dim(j, "rank_C");
    HA2Data H = HA2Data::zeros(n, r, m);
    if (j.contains("chart")) {
        Chart want = H.e2_chart();
        const json& cj = j["chart"];
        if (!cj.contains("variables") || !cj.contains("weights") ||
            cj["variables"].get<std::vector<std::string>>() != want.names() ||
            cj["weights"].get<std::vector<int>>() != want.weights())
            throw SpecFileError("chart block does not match the declared dimensions");
    }
    auto names = detail::base_names(n);
    detail::parse_grid(j, "Q_a_i", {n, r}, names,
                       [&](const std::vector<size_t>& ix, Poly p) { H.alg1.Q_a_i[ix[0]][ix[1]] = std::move(p); });
    detail::parse_grid(j, "Q_k_ij", {r, r, r}, names, [&](const std::vector<size_t>& ix, Poly p) {
        H.alg1.Q_k_ij[ix[0]][ix[1]][ix[2]] = std::move(p);
    });
    detail::parse_grid(j, "Q_a_ij", {n, r, r}, names,
                       [&](const std::vector<size_t>& ix, Poly p) { H.Q_a_ij[ix[0]][ix[1]][ix[2]] = std::move(p); });
    detail::parse_grid(j, "Q_a_mu", {n, m}, names,
                       [&](const std::vector<size_t>& ix, Poly p) { H.Q_a_mu[ix[0]][ix[1]] = std::move(p); });
    detail::parse_grid(j, "Q_mu_i", {m, r}, names,
                       [&](const std::vector<size_t>& ix, Poly p) { H.Q_mu_i[ix[0]][ix[1]] = std::move(p); });
    detail::parse_grid(j, "Q_mu_ij", {m, r, r}, names,
                       [&](const std::vector<size_t>& ix, Poly p) { H.Q_mu_ij[ix[0]][ix[1]][ix[2]] = std::move(p); });
    detail::parse_grid(j, "Q_mu_nui", {m, m, r}, names,
                       [&](const std::vector<size_t>& ix, Poly p) { H.Q_mu_nui[ix[0]][ix[1]][ix[2]] = std::move(p); });
    detail::parse_grid(j, "Q_mu_ijk", {m, r, r, r}, names, [&](const std::vector<size_t>& ix, Poly p) {
        H.Q_mu_ijk[ix[0]][ix[1]][ix[2]][ix[3]] = std::move(p);
    });
    try {
        H.validate();
    } catch (const std::exception& e) {
        throw SpecFileError(e.what());
    }
    return H;
}

// ---------------------------------------------------------------------------
// point_ha (rational entries as strings)
// ---------------------------------------------------------------------------

inline json to_json(const PointHAData& P) {
    const size_t r = P.dim_g, m = P.dim_C;
    json j;
    j["kind"] = "point_ha";
    j["dim_g"] = r;
    j["dim_C"] = m;
    j["bracket"] = detail::dump_grid(
        {r, r, r}, [&](const std::vector<size_t>& ix) { return P.bracket[ix[0]][ix[1]][ix[2]].to_string(); });
    j["pa"] = detail::dump_grid({m, r}, [&](const std::vector<size_t>& ix) { return P.pa[ix[0]][ix[1]].to_string(); });
    j["beta"] = detail::dump_grid(
        {m, r, r}, [&](const std::vector<size_t>& ix) { return P.beta[ix[0]][ix[1]][ix[2]].to_string(); });
    j["box"] = detail::dump_grid(
        {m, r, m}, [&](const std::vector<size_t>& ix) { return P.box[ix[0]][ix[1]][ix[2]].to_string(); });
    j["omega_bar"] = detail::dump_grid({m, r, r, r}, [&](const std::vector<size_t>& ix) {
        return P.omega_bar[ix[0]][ix[1]][ix[2]][ix[3]].to_string();
    });
    return j;
}

inline PointHAData point_ha_from_json(const json& j) {
    size_t r = detail::require_dim(j, "dim_g");
    size_t m = detail::require_dim(j, "dim_C");
    PointHAData P = PointHAData::zeros(r, m);
    std::vector<std::string> no_vars;
    auto rat = [&](const Poly& p) { return p.constant_term(); };
    detail::parse_grid(j, "bracket", {r, r, r}, no_vars,
                       [&](const std::vector<size_t>& ix, Poly p) { P.bracket[ix[0]][ix[1]][ix[2]] = rat(p); });
    detail::parse_grid(j, "pa", {m, r}, no_vars,
                       [&](const std::vector<size_t>& ix, Poly p) { P.pa[ix[0]][ix[1]] = rat(p); });
    detail::parse_grid(j, "beta", {m, r, r}, no_vars,
                       [&](const std::vector<size_t>& ix, Poly p) { P.beta[ix[0]][ix[1]][ix[2]] = rat(p); });
    detail::parse_grid(j, "box", {m, r, m}, no_vars,
                       [&](const std::vector<size_t>& ix, Poly p) { P.box[ix[0]][ix[1]][ix[2]] = rat(p); });
    detail::parse_grid(j, "omega_bar", {m, r, r, r}, no_vars, [&](const std::vector<size_t>& ix, Poly p) {
        P.omega_bar[ix[0]][ix[1]][ix[2]][ix[3]] = rat(p);
    });
    try {
        P.validate();
    } catch (const std::exception& e) {
        throw SpecFileError(e.what());
    }
    return P;
}

// ---------------------------------------------------------------------------
// ruth2 (+ optional morphism block toward the adjoint representation)
// ---------------------------------------------------------------------------

inline json to_json(const Ruth2Data& R, const RuthMorphism* morphism = nullptr) {
    auto names = detail::base_names(R.algebroid.base_dim);
    const size_t n = R.algebroid.base_dim, r = R.algebroid.rank, p = R.F0_rank, q = R.F1_rank;
    json j;
    j["kind"] = "ruth2";
    j["base_dim"] = n;
    j["rank_A"] = r;
    j["F0_rank"] = p;
    j["F1_rank"] = q;
    j["Q_a_i"] = detail::dump_grid(
        {n, r}, [&](const std::vector<size_t>& ix) { return R.algebroid.Q_a_i[ix[0]][ix[1]].to_string(names); });
    j["Q_k_ij"] = detail::dump_grid({r, r, r}, [&](const std::vector<size_t>& ix) {
        return R.algebroid.Q_k_ij[ix[0]][ix[1]][ix[2]].to_string(names);
    });
    j["partial"] =
        detail::dump_grid({q, p}, [&](const std::vector<size_t>& ix) { return R.partial[ix[0]][ix[1]].to_string(names); });
    j["conn0"] = detail::dump_grid(
        {p, r, p}, [&](const std::vector<size_t>& ix) { return R.conn0[ix[0]][ix[1]][ix[2]].to_string(names); });
    j["conn1"] = detail::dump_grid(
        {q, r, q}, [&](const std::vector<size_t>& ix) { return R.conn1[ix[0]][ix[1]][ix[2]].to_string(names); });
    j["K"] = detail::dump_grid({p, r, r, q}, [&](const std::vector<size_t>& ix) {
        return R.K[ix[0]][ix[1]][ix[2]][ix[3]].to_string(names);
    });
    if (morphism) {
        json mj;
        size_t p2 = morphism->Phi0_deg0.size();
        size_t q2 = morphism->Phi0_deg1.size();
        mj["Phi0_deg0"] = detail::dump_grid(
            {p2, p}, [&](const std::vector<size_t>& ix) { return morphism->Phi0_deg0[ix[0]][ix[1]].to_string(names); });
        mj["Phi0_deg1"] = detail::dump_grid(
            {q2, q}, [&](const std::vector<size_t>& ix) { return morphism->Phi0_deg1[ix[0]][ix[1]].to_string(names); });
        mj["Phi1"] = detail::dump_grid({p2, r, q}, [&](const std::vector<size_t>& ix) {
            return morphism->Phi1[ix[0]][ix[1]][ix[2]].to_string(names);
        });
        j["morphism"] = mj;
    }
    return j;
}

struct RuthFile {
    Ruth2Data ruth;
    std::optional<RuthMorphism> morphism;
};

inline RuthFile ruth2_from_json(const json& j) {
    size_t n = detail::require_dim(j, "base_dim");
    size_t r = detail::require_dim(j, "rank_A");
    size_t p = detail::require_dim(j, "F0_rank");
    size_t q = detail::require_dim(j, "F1_rank");
    Algebroid1Data A = Algebroid1Data::zeros(n, r);
    auto names = detail::base_names(n);
    detail::parse_grid(j, "Q_a_i", {n, r}, names,
                       [&](const std::vector<size_t>& ix, Poly pv) { A.Q_a_i[ix[0]][ix[1]] = std::move(pv); });
    detail::parse_grid(j, "Q_k_ij", {r, r, r}, names, [&](const std::vector<size_t>& ix, Poly pv) {
        A.Q_k_ij[ix[0]][ix[1]][ix[2]] = std::move(pv);
    });
    RuthFile out{Ruth2Data::zeros(std::move(A), p, q), std::nullopt};
    Ruth2Data& R = out.ruth;
    detail::parse_grid(j, "partial", {q, p}, names,
                       [&](const std::vector<size_t>& ix, Poly pv) { R.partial[ix[0]][ix[1]] = std::move(pv); });
    detail::parse_grid(j, "conn0", {p, r, p}, names,
                       [&](const std::vector<size_t>& ix, Poly pv) { R.conn0[ix[0]][ix[1]][ix[2]] = std::move(pv); });
    detail::parse_grid(j, "conn1", {q, r, q}, names,
                       [&](const std::vector<size_t>& ix, Poly pv) { R.conn1[ix[0]][ix[1]][ix[2]] = std::move(pv); });
    detail::parse_grid(j, "K", {p, r, r, q}, names, [&](const std::vector<size_t>& ix, Poly pv) {
        R.K[ix[0]][ix[1]][ix[2]][ix[3]] = std::move(pv);
    });
    try {
        R.validate();
    } catch (const std::exception& e) {
        throw SpecFileError(e.what());
    }
    if (j.contains("morphism")) {
        const json& mj = j["morphism"];
        RuthMorphism Phi;
        size_t p2 = mj.contains("Phi0_deg0") && mj["Phi0_deg0"].is_array() ? mj["Phi0_deg0"].size() : 0;
        size_t q2 = mj.contains("Phi0_deg1") && mj["Phi0_deg1"].is_array() ? mj["Phi0_deg1"].size() : 0;
        Phi.Phi0_deg0.assign(p2, std::vector<Poly>(p, Poly::zero(n)));
        Phi.Phi0_deg1.assign(q2, std::vector<Poly>(q, Poly::zero(n)));
        Phi.Phi1.assign(p2, std::vector<std::vector<Poly>>(r, std::vector<Poly>(q, Poly::zero(n))));
        detail::parse_grid(mj, "Phi0_deg0", {p2, p}, names,
                           [&](const std::vector<size_t>& ix, Poly pv) { Phi.Phi0_deg0[ix[0]][ix[1]] = std::move(pv); });
        detail::parse_grid(mj, "Phi0_deg1", {q2, q}, names,
                           [&](const std::vector<size_t>& ix, Poly pv) { Phi.Phi0_deg1[ix[0]][ix[1]] = std::move(pv); });
        detail::parse_grid(mj, "Phi1", {p2, r, q}, names, [&](const std::vector<size_t>& ix, Poly pv) {
            Phi.Phi1[ix[0]][ix[1]][ix[2]] = std::move(pv);
        });
        out.morphism = std::move(Phi);
    }
    return out;
}

// ---------------------------------------------------------------------------
// connection
// ---------------------------------------------------------------------------

inline json to_json(const Connection& C) {
    auto names = detail::base_names(C.base_dim);
    json j;
    j["kind"] = "connection";
    j["base_dim"] = C.base_dim;
    j["rank_A"] = C.rank;
    j["Gamma"] = detail::dump_grid({C.rank, C.base_dim, C.rank}, [&](const std::vector<size_t>& ix) {
        return C.Gamma[ix[0]][ix[1]][ix[2]].to_string(names);
    });
    return j;
}

inline Connection connection_from_json(const json& j) {
    size_t n = detail::require_dim(j, "base_dim");
    size_t r = detail::require_dim(j, "rank_A");
    Connection C = Connection::zero(n, r);
    auto names = detail::base_names(n);
    detail::parse_grid(j, "Gamma", {r, n, r}, names,
                       [&](const std::vector<size_t>& ix, Poly p) { C.Gamma[ix[0]][ix[1]][ix[2]] = std::move(p); });
    return C;
}

// ---------------------------------------------------------------------------
// generic entry points
// ---------------------------------------------------------------------------

struct Loaded {
    Kind kind;
    std::optional<Algebroid1Data> alg1;
    std::optional<HA2Data> ha2;
    std::optional<PointHAData> point;
    std::optional<RuthFile> ruth;
    std::optional<Connection> conn;
};

inline Loaded load(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw SpecFileError(std::string("not valid JSON: ") + e.what());
    }
    if (!j.contains("kind") || !j["kind"].is_string()) throw SpecFileError("missing top-level \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    Loaded out{};
    if (kind == "algebroid1") {
        out.kind = Kind::algebroid1;
        out.alg1 = algebroid1_from_json(j);
    } else if (kind == "ha2") {
        out.kind = Kind::ha2;
        out.ha2 = ha2_from_json(j);
    } else if (kind == "point_ha") {
        out.kind = Kind::point_ha;
        out.point = point_ha_from_json(j);
    } else if (kind == "ruth2") {
        out.kind = Kind::ruth2;
        out.ruth = ruth2_from_json(j);
    } else if (kind == "connection") {
        out.kind = Kind::connection;
        out.conn = connection_from_json(j);
    } else {
        throw SpecFileError("unknown kind \"" + kind + "\"");
    }
    return out;
}

inline Loaded load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecFileError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load(ss.str());
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw SpecFileError("cannot write " + path);
    out << dump(j);
}

}  // namespace ha2kit::specfile

#endif

#ifndef HA2KIT_CHART_HPP
#define HA2KIT_CHART_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ha2kit/parse.hpp"
#include "ha2kit/poly.hpp"

namespace ha2kit {

struct ChartMismatch : std::runtime_error {
    ChartMismatch() : std::runtime_error("vector fields live on different charts") {}
};
struct NotProjectable : std::runtime_error {
    explicit NotProjectable(const std::string& what) : std::runtime_error(what) {}
};
struct BadComponentCount : std::runtime_error {
    BadComponentCount(size_t got, size_t want)
        : std::runtime_error("expected " + std::to_string(want) + " components, got " + std::to_string(got)) {}
};

// Weight of a graded function or vector field: a single integer, or
// non-homogeneous, or identically zero (homogeneous of every weight).
struct GradedWeight {
    enum Kind { Homogeneous, NotHomogeneous, Zero } kind = Zero;
    int value = 0;

    static GradedWeight homogeneous(int w) { return {Homogeneous, w}; }
    static GradedWeight not_homogeneous() { return {NotHomogeneous, 0}; }
    static GradedWeight zero() { return {Zero, 0}; }

    bool is(int w) const { return kind == Zero || (kind == Homogeneous && value == w); }
    bool operator==(const GradedWeight& o) const { return kind == o.kind && (kind != Homogeneous || value == o.value); }
};

// Ordered graded coordinate system. Weight-0 variables form the base; the
// order is the maximum weight.
class Chart {
  public:
    Chart() = default;
    Chart(std::vector<std::string> names, std::vector<int> weights)
        : names_(std::move(names)), weights_(std::move(weights)) {
        if (names_.size() != weights_.size()) throw std::invalid_argument("Chart: names/weights size mismatch");
        for (size_t i = 0; i < names_.size(); ++i) {
            if (weights_[i] < 0) throw std::invalid_argument("Chart: negative weight");
            for (size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j]) throw std::invalid_argument("Chart: duplicate variable " + names_[i]);
        }
    }

    // x1..xn of weight 0, then per block (prefix, count, weight).
    static Chart graded(size_t base_dim, const std::vector<std::pair<std::string, std::pair<size_t, int>>>& blocks) {
        std::vector<std::string> names;
        std::vector<int> weights;
        for (size_t a = 1; a <= base_dim; ++a) {
            names.push_back("x" + std::to_string(a));
            weights.push_back(0);
        }
        for (const auto& [prefix, cw] : blocks)
            for (size_t i = 1; i <= cw.first; ++i) {
                names.push_back(prefix + std::to_string(i));
                weights.push_back(cw.second);
            }
        return Chart(std::move(names), std::move(weights));
    }

    size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& weights() const { return weights_; }
    const std::string& name(size_t i) const { return names_.at(i); }
    int weight(size_t i) const { return weights_.at(i); }

    int order() const {
        int k = 0;
        for (int w : weights_) k = std::max(k, w);
        return k;
    }

    size_t index_of(const std::string& name) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        throw UnknownVariable(name, 0);
    }

    // indices of all variables of the given weight, in chart order
    std::vector<size_t> indices_of_weight(int w) const {
        std::vector<size_t> out;
        for (size_t i = 0; i < names_.size(); ++i)
            if (weights_[i] == w) out.push_back(i);
        return out;
    }

    // sub-chart of all variables of weight <= j
    Chart truncation(int j) const {
        std::vector<std::string> names;
        std::vector<int> weights;
        for (size_t i = 0; i < names_.size(); ++i)
            if (weights_[i] <= j) {
                names.push_back(names_[i]);
                weights.push_back(weights_[i]);
            }
        return Chart(std::move(names), std::move(weights));
    }

    Poly parse(const std::string& expr) const { return poly_parse(expr, names_); }
    Poly var(size_t i) const { return Poly::variable(size(), i); }
    Poly constant(const Rational& c) const { return Poly::constant(size(), c); }
    Poly zero() const { return Poly::zero(size()); }

    bool operator==(const Chart& o) const { return names_ == o.names_ && weights_ == o.weights_; }
    bool operator!=(const Chart& o) const { return !(*this == o); }

  private:
    std::vector<std::string> names_;
    std::vector<int> weights_;
};

inline GradedWeight fn_weight(const Poly& p, const Chart& chart) {
    if (p.is_zero()) return GradedWeight::zero();
    int w = 0;
    if (p.homogeneous_weight(chart.weights(), w)) return GradedWeight::homogeneous(w);
    return GradedWeight::not_homogeneous();
}

// Polynomial vector field on a chart: X = sum_i coeff[i] * d/d(var_i).
class VectorField {
  public:
    VectorField() = default;
    explicit VectorField(Chart chart) : chart_(std::move(chart)) {
        coeffs_.assign(chart_.size(), Poly::zero(chart_.size()));
    }

    const Chart& chart() const { return chart_; }
    const Poly& coeff(size_t i) const { return coeffs_.at(i); }
    void set_coeff(size_t i, Poly p) {
        if (p.nvars() != chart_.size()) throw std::invalid_argument("VectorField: coefficient universe mismatch");
        coeffs_.at(i) = std::move(p);
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    // directional derivative X(f)
    Poly apply(const Poly& f) const {
        Poly out = Poly::zero(chart_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            out += coeffs_[i] * f.diff(i);
        }
        return out;
    }

    VectorField operator+(const VectorField& o) const {
        check(o);
        VectorField r(chart_);
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
        return r;
    }
    VectorField operator-(const VectorField& o) const {
        check(o);
        VectorField r(chart_);
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
        return r;
    }
    VectorField operator-() const {
        VectorField r(chart_);
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
        return r;
    }
    VectorField operator*(const Poly& f) const {
        VectorField r(chart_);
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] * f;
        return r;
    }
    VectorField operator*(const Rational& c) const {
        VectorField r(chart_);
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] * c;
        return r;
    }
    bool operator==(const VectorField& o) const { return chart_ == o.chart_ && coeffs_ == o.coeffs_; }
    bool operator!=(const VectorField& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string out;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + coeffs_[i].to_string(chart_.names()) + ")*d_" + chart_.name(i);
        }
        return out.empty() ? "0" : out;
    }

  private:
    void check(const VectorField& o) const {
        if (chart_ != o.chart_) throw ChartMismatch();
    }

    Chart chart_;
    std::vector<Poly> coeffs_;
};

inline VectorField operator*(const Poly& f, const VectorField& X) { return X * f; }
inline VectorField operator*(const Rational& c, const VectorField& X) { return X * c; }

// [X,Y]^c = X(Y^c) - Y(X^c)
inline VectorField vf_bracket(const VectorField& X, const VectorField& Y) {
    if (X.chart() != Y.chart()) throw ChartMismatch();
    VectorField r(X.chart());
    for (size_t c = 0; c < X.chart().size(); ++c) r.set_coeff(c, X.apply(Y.coeff(c)) - Y.apply(X.coeff(c)));
    return r;
}

// The unique a with weight(X^v) = weight(v) + a for every nonzero
// coefficient, if it exists.
inline GradedWeight vf_weight(const VectorField& X, const Chart& chart) {
    bool any = false;
    int alpha = 0;
    for (size_t i = 0; i < chart.size(); ++i) {
        const Poly& c = X.coeff(i);
        if (c.is_zero()) continue;
        int w = 0;
        if (!c.homogeneous_weight(chart.weights(), w)) return GradedWeight::not_homogeneous();
        int a = w - chart.weight(i);
        if (!any) {
            alpha = a;
            any = true;
        } else if (a != alpha) {
            return GradedWeight::not_homogeneous();
        }
    }
    return any ? GradedWeight::homogeneous(alpha) : GradedWeight::zero();
}

// Restriction of a field to the sub-chart `target` (variables of low weight).
// Fails when a kept coefficient depends on a dropped variable.
inline VectorField vf_project(const VectorField& X, const Chart& target) {
    const Chart& src = X.chart();
    std::vector<size_t> kept;  // src index per target variable
    for (size_t t = 0; t < target.size(); ++t) kept.push_back(src.index_of(target.name(t)));

    std::vector<bool> is_kept(src.size(), false);
    for (size_t i : kept) is_kept[i] = true;

    VectorField out(target);
    for (size_t t = 0; t < target.size(); ++t) {
        const Poly& c = X.coeff(kept[t]);
        // rebuild c over the target universe; reject dropped-variable dependence
        Poly r = Poly::zero(target.size());
        for (const auto& [m, coeff] : c.terms()) {
            Monomial tm{std::vector<int>(target.size(), 0)};
            for (size_t i = 0; i < src.size(); ++i) {
                if (m.exp[i] == 0) continue;
                if (!is_kept[i])
                    throw NotProjectable("coefficient of d_" + target.name(t) + " depends on dropped variable " +
                                         src.name(i));
                for (size_t t2 = 0; t2 < kept.size(); ++t2)
                    if (kept[t2] == i) tm.exp[t2] = m.exp[i];
            }
            Poly term(target.size());
            term += Poly::constant(target.size(), coeff);
            for (size_t t2 = 0; t2 < target.size(); ++t2)
                if (tm.exp[t2]) term *= Poly::variable(target.size(), t2, tm.exp[t2]);
            r += term;
        }
        out.set_coeff(t, r);
    }
    return out;
}

// Sections of the top core, as weight -k vertical fields: v -> sum v^mu(x) d_{z^mu}.
// Components must be polynomials in the base (weight-0) variables only,
// given over the base universe.
inline VectorField core_to_vf(const std::vector<Poly>& components, const Chart& chart) {
    int k = chart.order();
    std::vector<size_t> top = chart.indices_of_weight(k);
    std::vector<size_t> base = chart.indices_of_weight(0);
    if (components.size() != top.size()) throw BadComponentCount(components.size(), top.size());

    // base universe -> full chart universe
    std::map<size_t, Poly> up;
    for (size_t b = 0; b < base.size(); ++b) up[b] = Poly::variable(chart.size(), base[b]);

    VectorField X(chart);
    for (size_t m = 0; m < top.size(); ++m) {
        if (components[m].nvars() != base.size())
            throw std::invalid_argument("core_to_vf: components must live over the base variables");
        X.set_coeff(top[m], base.empty() ? Poly::constant(chart.size(), components[m].constant_term())
                                         : components[m].subst(up));
    }
    return X;
}

// Inverse of core_to_vf for a weight -k vertical field.
inline std::vector<Poly> vf_to_core(const VectorField& X, const Chart& chart) {
    int k = chart.order();
    std::vector<size_t> top = chart.indices_of_weight(k);
    std::vector<size_t> base = chart.indices_of_weight(0);

    std::map<size_t, Poly> down;
    for (size_t b = 0; b < base.size(); ++b) down[base[b]] = Poly::variable(base.size(), b);
    for (size_t i = 0; i < chart.size(); ++i)
        if (chart.weight(i) != 0) down[i] = Poly::zero(base.size());

    std::vector<Poly> out;
    for (size_t i = 0; i < chart.size(); ++i) {
        bool is_top = chart.weight(i) == k;
        if (!is_top) {
            if (!X.coeff(i).is_zero())
                throw NotProjectable("field is not a vertical top-core field: d_" + chart.name(i) + " term present");
            continue;
        }
        int w = 0;
        if (!(X.coeff(i).is_zero() || (X.coeff(i).homogeneous_weight(chart.weights(), w) && w == 0)))
            throw NotProjectable("top-core coefficient is not a base function");
        out.push_back(X.coeff(i).subst(down));
    }
    return out;
}

}  // namespace ha2kit

#endif

#ifndef HA2KIT_POLY_HPP
#define HA2KIT_POLY_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ha2kit/rational.hpp"

namespace ha2kit {

struct UnknownVariable : std::runtime_error {
    UnknownVariable(const std::string& name, size_t pos)
        : std::runtime_error("unknown variable '" + name + "' at position " + std::to_string(pos)),
          variable(name),
          position(pos) {}
    std::string variable;
    size_t position;
};

// Exponent vector over a fixed, ordered variable universe.
struct Monomial {
    std::vector<int> exp;

    int degree() const {
        int d = 0;
        for (int e : exp) d += e;
        return d;
    }
    bool operator==(const Monomial& o) const { return exp == o.exp; }
};

// Graded-lexicographic order, written so that std::map iterates from the
// leading term: higher total degree first, ties broken lexicographically
// with earlier variables dominating.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.exp > b.exp;
    }
};

// Multivariate polynomial with exact rational coefficients in canonical
// normal form: no zero coefficients, unique monomials, deterministic order.
class Poly {
  public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    Poly() : nvars_(0) {}
    explicit Poly(size_t nvars) : nvars_(nvars) {}

    static Poly constant(size_t nvars, Rational c) {
        Poly p(nvars);
        if (!c.is_zero()) p.terms_[Monomial{std::vector<int>(nvars, 0)}] = std::move(c);
        return p;
    }
    static Poly zero(size_t nvars) { return Poly(nvars); }
    static Poly one(size_t nvars) { return constant(nvars, Rational(1)); }

    static Poly variable(size_t nvars, size_t index, int power = 1) {
        if (index >= nvars) throw std::out_of_range("Poly: variable index out of range");
        if (power < 0) throw std::invalid_argument("Poly: negative exponent");
        if (power == 0) return one(nvars);
        Poly p(nvars);
        Monomial m{std::vector<int>(nvars, 0)};
        m.exp[index] = power;
        p.terms_[m] = Rational(1);
        return p;
    }

    size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
    }
    Rational constant_term() const {
        Monomial m{std::vector<int>(nvars_, 0)};
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    int degree() const {
        // terms iterate leading-first
        return terms_.empty() ? -1 : terms_.begin()->first.degree();
    }

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Poly operator+(const Poly& o) const {
        check_universe(o);
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Poly operator-(const Poly& o) const {
        check_universe(o);
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    Poly operator*(const Poly& o) const {
        check_universe(o);
        Poly r(nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m = ma;
                for (size_t i = 0; i < nvars_; ++i) m.exp[i] += mb.exp[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Poly operator*(const Rational& c) const {
        Poly r(nvars_);
        if (c.is_zero()) return r;
        for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(int n) const {
        if (n < 0) throw std::invalid_argument("Poly: negative power");
        Poly r = one(nvars_);
        Poly base = *this;
        while (n) {
            if (n & 1) r *= base;
            base = (n >>= 1) ? base * base : base;
        }
        return r;
    }

    // Formal partial derivative.
    Poly diff(size_t index) const {
        if (index >= nvars_) throw std::out_of_range("Poly: variable index out of range");
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            int e = m.exp[index];
            if (e == 0) continue;
            Monomial d = m;
            d.exp[index] = e - 1;
            r.add_term(d, c * Rational(e));
        }
        return r;
    }

    // Simultaneous substitution; any variable absent from the map stays itself.
    // Replacement polynomials may live in a different universe, as long as
    // they all agree; the result lives in that universe.
    Poly subst(const std::map<size_t, Poly>& bindings) const {
        size_t out_nvars = nvars_;
        for (const auto& [i, p] : bindings) {
            if (i >= nvars_) throw std::out_of_range("Poly: substitution index out of range");
            out_nvars = p.nvars();
        }
        Poly r(out_nvars);
        for (const auto& [m, c] : terms_) {
            Poly term = constant(out_nvars, c);
            for (size_t i = 0; i < nvars_; ++i) {
                if (m.exp[i] == 0) continue;
                auto it = bindings.find(i);
                if (it != bindings.end()) {
                    term *= it->second.pow(m.exp[i]);
                } else {
                    if (out_nvars != nvars_)
                        throw std::invalid_argument("Poly: partial substitution into a different universe");
                    term *= variable(out_nvars, i, m.exp[i]);
                }
            }
            r += term;
        }
        return r;
    }

    // Total weight of each monomial under per-variable weights; returns
    // false into `weight` when the polynomial is not homogeneous.
    // Zero polynomial is homogeneous of every weight.
    bool homogeneous_weight(const std::vector<int>& var_weights, int& weight) const {
        bool first = true;
        for (const auto& [m, c] : terms_) {
            int w = 0;
            for (size_t i = 0; i < nvars_; ++i) w += m.exp[i] * var_weights[i];
            if (first) {
                weight = w;
                first = false;
            } else if (w != weight) {
                return false;
            }
        }
        return true;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a.sign() < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += a.sign() < 0 ? " - " : " + ";
                if (a.sign() < 0) a = -a;
            }
            bool has_vars = m.degree() > 0;
            bool coeff_shown = !a.is_one() || !has_vars;
            if (coeff_shown) out += a.to_string();
            bool star = coeff_shown;
            for (size_t i = 0; i < nvars_; ++i) {
                if (m.exp[i] == 0) continue;
                if (star) out += "*";
                out += names.at(i);
                if (m.exp[i] != 1) out += "^" + std::to_string(m.exp[i]);
                star = true;
            }
            first = false;
        }
        return out;
    }

  private:
    void check_universe(const Poly& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("Poly: mixed variable universes");
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    size_t nvars_;
    TermMap terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

}  // namespace ha2kit

#endif

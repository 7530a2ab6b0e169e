#ifndef HA2KIT_RANDOM_HPP
#define HA2KIT_RANDOM_HPP

#include <cstdint>

#include "ha2kit/poly.hpp"

namespace ha2kit {

// Deterministic generator for seeded test corpora (splitmix64). We avoid
// <random> distributions so sequences are identical across platforms.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    // uniform integer in [lo, hi]
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // random polynomial over nvars variables: each monomial of total degree
    // <= max_degree gets a coefficient in [lo, hi] with the given density.
    Poly poly(size_t nvars, int max_degree, long long lo, long long hi, unsigned density_pct = 60) {
        Poly out(nvars);
        std::vector<int> exp(nvars, 0);
        gen_rec(out, exp, 0, max_degree, lo, hi, density_pct);
        return out;
    }

  private:
    void gen_rec(Poly& out, std::vector<int>& exp, size_t i, int budget, long long lo, long long hi,
                 unsigned density_pct) {
        if (i == exp.size()) {
            if (below(100) < density_pct) {
                long long c = range(lo, hi);
                if (c != 0) {
                    Poly t = Poly::constant(exp.size(), Rational(c));
                    for (size_t v = 0; v < exp.size(); ++v)
                        if (exp[v]) t *= Poly::variable(exp.size(), v, exp[v]);
                    out += t;
                }
            }
            return;
        }
        for (int e = 0; e <= budget; ++e) {
            exp[i] = e;
            gen_rec(out, exp, i + 1, budget - e, lo, hi, density_pct);
        }
        exp[i] = 0;
    }

    uint64_t state_;
};

}  // namespace ha2kit

#endif

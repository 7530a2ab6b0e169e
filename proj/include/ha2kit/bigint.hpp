#ifndef HA2KIT_BIGINT_HPP
#define HA2KIT_BIGINT_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace ha2kit {

// Sign-magnitude arbitrary-precision integer, base 2^32.
// Coefficients in this library stay small; everything is schoolbook.
class BigInt {
  public:
    BigInt() = default;

    BigInt(long long v) {
        if (v < 0) {
            neg_ = true;
            // avoid overflow on LLONG_MIN
            unsigned long long m = static_cast<unsigned long long>(-(v + 1)) + 1ull;
            push_u64(m);
        } else {
            push_u64(static_cast<unsigned long long>(v));
        }
    }

    static BigInt from_string(const std::string& s) {
        BigInt r;
        size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = (s[i] == '-');
            ++i;
        }
        if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
            r.mul_small(10);
            r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        r.neg_ = neg && !r.is_zero();
        return r;
    }

    bool is_zero() const { return mag_.empty(); }
    bool is_negative() const { return neg_; }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    bool operator==(const BigInt& o) const { return neg_ == o.neg_ && mag_ == o.mag_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }

    bool operator<(const BigInt& o) const {
        if (neg_ != o.neg_) return neg_;
        int c = cmp_mag(mag_, o.mag_);
        return neg_ ? c > 0 : c < 0;
    }
    bool operator<=(const BigInt& o) const { return !(o < *this); }
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator>=(const BigInt& o) const { return !(*this < o); }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.neg_ = !r.neg_;
        return r;
    }

    BigInt operator+(const BigInt& o) const {
        BigInt r;
        if (neg_ == o.neg_) {
            r.mag_ = add_mag(mag_, o.mag_);
            r.neg_ = neg_ && !r.mag_.empty();
        } else {
            int c = cmp_mag(mag_, o.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(mag_, o.mag_);
                r.neg_ = neg_;
            } else {
                r.mag_ = sub_mag(o.mag_, mag_);
                r.neg_ = o.neg_;
            }
        }
        return r;
    }
    BigInt operator-(const BigInt& o) const { return *this + (-o); }

    BigInt operator*(const BigInt& o) const {
        BigInt r;
        if (is_zero() || o.is_zero()) return r;
        r.mag_.assign(mag_.size() + o.mag_.size(), 0);
        for (size_t i = 0; i < mag_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < o.mag_.size(); ++j) {
                uint64_t cur = static_cast<uint64_t>(mag_[i]) * o.mag_[j] + r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            size_t k = i + o.mag_.size();
            while (carry) {
                uint64_t cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.neg_ = (neg_ != o.neg_) && !r.mag_.empty();
        return r;
    }

    // Truncated quotient (rounds toward zero), matching C semantics.
    static void divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        q = BigInt();
        r = BigInt();
        divrem_mag(a.mag_, b.mag_, q.mag_, r.mag_);
        q.trim();
        r.trim();
        q.neg_ = (a.neg_ != b.neg_) && !q.mag_.empty();
        r.neg_ = a.neg_ && !r.mag_.empty();
    }

    BigInt operator/(const BigInt& o) const {
        BigInt q, r;
        divrem(*this, o, q, r);
        return q;
    }
    BigInt operator%(const BigInt& o) const {
        BigInt q, r;
        divrem(*this, o, q, r);
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        r.neg_ = false;
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.neg_ = false;
        b.neg_ = false;
        while (!b.is_zero()) {
            BigInt q, r;
            divrem(a, b, q, r);
            a = b;
            b = r;
        }
        return a;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<uint32_t> m = mag_;
        std::string digits;
        while (!m.empty()) {
            uint64_t rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | m[i];
                m[i] = static_cast<uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            for (int d = 0; d < 9; ++d) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string out;
        if (neg_) out.push_back('-');
        out.append(digits.rbegin(), digits.rend());
        return out;
    }

    // Exact conversion when the value fits; throws otherwise.
    long long to_ll() const {
        if (mag_.size() > 2) throw std::overflow_error("BigInt: does not fit in long long");
        unsigned long long v = 0;
        for (size_t i = mag_.size(); i-- > 0;) v = (v << 32) | mag_[i];
        if (!neg_ && v > 0x7fffffffffffffffull) throw std::overflow_error("BigInt: does not fit in long long");
        if (neg_ && v > 0x8000000000000000ull) throw std::overflow_error("BigInt: does not fit in long long");
        return neg_ ? -static_cast<long long>(v - 1) - 1 : static_cast<long long>(v);
    }

  private:
    std::vector<uint32_t> mag_;  // little-endian limbs, no trailing zeros
    bool neg_ = false;

    void push_u64(unsigned long long m) {
        if (m) mag_.push_back(static_cast<uint32_t>(m));
        if (m >> 32) mag_.push_back(static_cast<uint32_t>(m >> 32));
    }

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) neg_ = false;
    }

    void mul_small(uint32_t f) {
        uint64_t carry = 0;
        for (auto& limb : mag_) {
            uint64_t cur = static_cast<uint64_t>(limb) * f + carry;
            limb = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<uint32_t>(carry));
    }

    void add_small(uint32_t v) {
        uint64_t carry = v;
        for (auto& limb : mag_) {
            if (!carry) break;
            uint64_t cur = limb + carry;
            limb = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<uint32_t>(carry));
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            uint64_t cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            r[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
            borrow = 0;
            if (cur < 0) {
                cur += (1ll << 32);
                borrow = 1;
            }
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // binary long division on magnitudes
    static void divrem_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        q.clear();
        r.clear();
        if (cmp_mag(a, b) < 0) {
            r = a;
            return;
        }
        q.assign(a.size(), 0);
        size_t bits = a.size() * 32;
        for (size_t i = bits; i-- > 0;) {
            // r = (r << 1) | bit i of a
            uint32_t carry = (a[i / 32] >> (i % 32)) & 1u;
            for (auto& limb : r) {
                uint32_t next = limb >> 31;
                limb = (limb << 1) | carry;
                carry = next;
            }
            if (carry) r.push_back(carry);
            if (cmp_mag(r, b) >= 0) {
                r = sub_mag(r, b);
                q[i / 32] |= (1u << (i % 32));
            }
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
    }
};

}  // namespace ha2kit

#endif

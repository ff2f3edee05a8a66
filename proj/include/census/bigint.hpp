// Minimal signed arbitrary-precision integer: just enough arithmetic
// (add, sub, mul, compare) to back matrix entries when 64-bit products
// overflow during ball enumeration. No division beyond the small-word
// helper used for decimal printing.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

namespace census {

class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        unsigned long long m = v < 0 ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
        while (m != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffu));
            m >>= 32;
        }
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    friend bool operator==(const BigInt& x, const BigInt& y) {
        return x.sign_ == y.sign_ && x.limbs_ == y.limbs_;
    }
    friend bool operator!=(const BigInt& x, const BigInt& y) { return !(x == y); }

    friend bool operator<(const BigInt& x, const BigInt& y) {
        if (x.sign_ != y.sign_) return x.sign_ < y.sign_;
        int c = cmp_mag(x.limbs_, y.limbs_);
        return x.sign_ >= 0 ? c < 0 : c > 0;
    }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& x, const BigInt& y) {
        if (x.sign_ == 0) return y;
        if (y.sign_ == 0) return x;
        BigInt r;
        if (x.sign_ == y.sign_) {
            r.limbs_ = add_mag(x.limbs_, y.limbs_);
            r.sign_ = x.sign_;
        } else {
            int c = cmp_mag(x.limbs_, y.limbs_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.limbs_ = sub_mag(x.limbs_, y.limbs_);
                r.sign_ = x.sign_;
            } else {
                r.limbs_ = sub_mag(y.limbs_, x.limbs_);
                r.sign_ = y.sign_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& x, const BigInt& y) { return x + (-y); }

    friend BigInt operator*(const BigInt& x, const BigInt& y) {
        if (x.sign_ == 0 || y.sign_ == 0) return BigInt();
        BigInt r;
        r.sign_ = x.sign_ * y.sign_;
        r.limbs_.assign(x.limbs_.size() + y.limbs_.size(), 0);
        for (std::size_t i = 0; i < x.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < y.limbs_.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(x.limbs_[i]) * y.limbs_[j] +
                                    r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
            }
            std::size_t k = i + y.limbs_.size();
            while (carry != 0) {
                std::uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        return r;
    }

    BigInt& operator+=(const BigInt& y) { return *this = *this + y; }
    BigInt& operator*=(const BigInt& y) { return *this = *this * y; }

    double to_double() const {
        double m = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;)
            m = m * 4294967296.0 + static_cast<double>(limbs_[i]);
        return sign_ < 0 ? -m : m;
    }

    bool fits_int64() const {
        if (limbs_.size() > 2) return false;
        unsigned long long m = magnitude_u64();
        if (sign_ >= 0) return m <= 0x7fffffffffffffffull;
        return m <= 0x8000000000000000ull;
    }

    long long to_int64() const {
        unsigned long long m = magnitude_u64();
        return sign_ < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::vector<std::uint32_t> work = limbs_;
        std::string digits;
        while (!work.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            for (int d = 0; d < 9; ++d) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        if (sign_ < 0) digits.push_back('-');
        return std::string(digits.rbegin(), digits.rend());
    }

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(sign_ + 2);
        for (std::uint32_t limb : limbs_) h = h * 1000003u ^ limb;
        return h;
    }

private:
    int sign_ = 0;                      // -1, 0, +1
    std::vector<std::uint32_t> limbs_;  // little-endian magnitude, no trailing zeros

    unsigned long long magnitude_u64() const {
        unsigned long long m = 0;
        if (limbs_.size() > 1) m = static_cast<unsigned long long>(limbs_[1]) << 32;
        if (!limbs_.empty()) m |= limbs_[0];
        return m;
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) sign_ = 0;
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r;
        r.reserve(std::max(a.size(), b.size()) + 1);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < a.size() || i < b.size(); ++i) {
            std::uint64_t cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            r.push_back(static_cast<std::uint32_t>(cur & 0xffffffffu));
            carry = cur >> 32;
        }
        if (carry) r.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                               (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            if (cur < 0) {
                cur += 0x100000000ll;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

}  // namespace census

template <>
struct std::hash<census::BigInt> {
    std::size_t operator()(const census::BigInt& v) const { return v.hash(); }
};

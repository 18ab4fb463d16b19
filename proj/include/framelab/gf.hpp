#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace framelab {

inline bool is_supported_prime(int p) {
    if (p < 2 || p > 31) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Arithmetic in GF(p) for a small prime p. Residues are stored as int in
// [0, p). Inverses come from a table built once at construction.
class PrimeField {
public:
    explicit PrimeField(int p) : p_(p) {
        if (!is_supported_prime(p))
            throw std::invalid_argument("PrimeField: p must be a prime in [2,31], got " + std::to_string(p));
        inv_[0] = 0;
        for (int a = 1; a < p_; ++a) {
            for (int b = 1; b < p_; ++b) {
                if (a * b % p_ == 1) { inv_[a] = static_cast<uint8_t>(b); break; }
            }
        }
    }

    int p() const { return p_; }

    int add(int a, int b) const { int s = a + b; return s >= p_ ? s - p_ : s; }
    int sub(int a, int b) const { int s = a - b; return s < 0 ? s + p_ : s; }
    int mul(int a, int b) const { return a * b % p_; }
    int neg(int a) const { return a == 0 ? 0 : p_ - a; }

    int inv(int a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        return inv_[a];
    }

    int div(int a, int b) const { return mul(a, inv(b)); }

    int pow(int a, long long e) const {
        if (e < 0) { a = inv(a); e = -e; }
        int r = 1 % p_, base = a % p_;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // Reduce an arbitrary int (possibly negative) into [0, p).
    int normalize(long long v) const {
        long long m = v % p_;
        return static_cast<int>(m < 0 ? m + p_ : m);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    int p_;
    std::array<uint8_t, 32> inv_{};
};

// A subgroup of the multiplicative group GF(p)^*, kept as a sorted element
// list plus a membership bitmask. Always contains 1 and is closed under
// products and inverses; construction validates this.
class SubgroupGamma {
public:
    SubgroupGamma(PrimeField f, std::vector<int> elements) : field_(f) {
        if (elements.empty())
            throw std::invalid_argument("SubgroupGamma: empty element set");
        for (int x : elements) {
            if (x <= 0 || x >= f.p())
                throw std::invalid_argument("SubgroupGamma: element out of range: " + std::to_string(x));
            mask_ |= 1u << x;
        }
        for (int x = 1; x < f.p(); ++x)
            if (mask_ & (1u << x)) elems_.push_back(x);
        if (elems_.size() != elements.size())
            throw std::invalid_argument("SubgroupGamma: repeated elements");
        if (!contains(1))
            throw std::invalid_argument("SubgroupGamma: must contain 1");
        for (int a : elems_)
            for (int b : elems_)
                if (!contains(f.mul(a, b)))
                    throw std::invalid_argument("SubgroupGamma: not closed under multiplication");
        if ((f.p() - 1) % elems_.size() != 0)
            throw std::invalid_argument("SubgroupGamma: order does not divide p-1");
    }

    static SubgroupGamma trivial(PrimeField f) { return SubgroupGamma(f, {1}); }

    static SubgroupGamma full(PrimeField f) {
        std::vector<int> e;
        for (int x = 1; x < f.p(); ++x) e.push_back(x);
        return SubgroupGamma(f, e);
    }

    static SubgroupGamma generated_by(PrimeField f, int g) {
        if (g <= 0 || g >= f.p()) throw std::invalid_argument("SubgroupGamma: bad generator");
        std::vector<int> e;
        int x = 1;
        do { e.push_back(x); x = f.mul(x, g); } while (x != 1);
        return SubgroupGamma(f, e);
    }

    // The unique subgroup of order d (d must divide p-1): solutions of x^d = 1.
    static SubgroupGamma of_order(PrimeField f, int d) {
        if (d <= 0 || (f.p() - 1) % d != 0)
            throw std::invalid_argument("SubgroupGamma: order must divide p-1");
        std::vector<int> e;
        for (int x = 1; x < f.p(); ++x)
            if (f.pow(x, d) == 1) e.push_back(x);
        return SubgroupGamma(f, e);
    }

    // Squares: index-2 subgroup for odd p, everything for p = 2.
    static SubgroupGamma squares(PrimeField f) {
        return f.p() == 2 ? full(f) : of_order(f, (f.p() - 1) / 2);
    }

    static std::vector<SubgroupGamma> all_subgroups(PrimeField f) {
        std::vector<SubgroupGamma> out;
        for (int d = 1; d <= f.p() - 1; ++d)
            if ((f.p() - 1) % d == 0) out.push_back(of_order(f, d));
        return out;
    }

    const PrimeField& field() const { return field_; }
    int p() const { return field_.p(); }
    bool contains(int x) const { return x > 0 && x < field_.p() && (mask_ & (1u << x)); }
    const std::vector<int>& elements() const { return elems_; }
    int size() const { return static_cast<int>(elems_.size()); }
    bool is_full() const { return size() == field_.p() - 1; }

    bool operator==(const SubgroupGamma& o) const {
        return field_ == o.field_ && mask_ == o.mask_;
    }

private:
    PrimeField field_;
    std::vector<int> elems_;
    uint32_t mask_ = 0;
};

} // namespace framelab

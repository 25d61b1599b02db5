#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqss/error.hpp"

namespace hqss::ff {

using Elem = std::uint32_t;
using FVector = std::vector<Elem>;
using FMatrix = std::vector<FVector>;

inline bool isPrime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Smallest element whose multiplicative order is p-1.
inline Elem findPrimitive(std::uint32_t p) {
    if (p < 3 || !isPrime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not an odd prime");
    std::vector<std::uint32_t> factors;
    std::uint32_t n = p - 1;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        factors.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) factors.push_back(n);
    auto powmod = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        for (; e; e >>= 1, b = b * b % p)
            if (e & 1) r = r * b % p;
        return r;
    };
    for (Elem g = 2; g < p; ++g) {
        bool ok = true;
        for (auto q : factors)
            if (powmod(g, (p - 1) / q) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw Error(Errc::NotPrime, "no primitive element mod " + std::to_string(p));
}

class FieldCtx {
public:
    explicit FieldCtx(std::uint32_t p) : p_(p) {
        if (p < 5 || !isPrime(p))
            throw Error(Errc::NotPrime, "field modulus must be a prime >= 5, got " + std::to_string(p));
        c_ = findPrimitive(p);
        pow_.resize(p - 1);
        log_.assign(p, 0);
        Elem v = 1;
        for (std::uint32_t e = 0; e + 1 < p; ++e) {
            pow_[e] = v;
            log_[v] = e;
            v = mul(v, c_);
        }
    }

    std::uint32_t p() const { return p_; }
    Elem primitive() const { return c_; }

    Elem normalize(long long v) const {
        long long r = v % static_cast<long long>(p_);
        return static_cast<Elem>(r < 0 ? r + p_ : r);
    }

    Elem add(Elem a, Elem b) const { return (a + b) % p_; }
    Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
    Elem neg(Elem a) const { return a ? p_ - a : 0; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    }

    Elem inv(Elem a) const {
        if (a % p_ == 0) throw Error(Errc::ZeroInverse, "0 has no inverse mod " + std::to_string(p_));
        return pow_[(p_ - 1 - log_[a % p_]) % (p_ - 1)];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    // c^e for any integer exponent.
    Elem exp(long long e) const {
        long long n = p_ - 1;
        long long r = e % n;
        return pow_[static_cast<std::size_t>(r < 0 ? r + n : r)];
    }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1;
        for (; e; e >>= 1, a = mul(a, a))
            if (e & 1) r = mul(r, a);
        return r;
    }

    std::uint32_t discreteLog(Elem v) const {
        if (v % p_ == 0) throw Error(Errc::ZeroArgument, "discrete log of 0");
        return log_[v % p_];
    }

    Elem dot(const FVector& a, const FVector& b) const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            s = (s + static_cast<std::uint64_t>(a[i]) * b[i]) % p_;
        return static_cast<Elem>(s);
    }

    const std::vector<Elem>& powTable() const { return pow_; }
    const std::vector<std::uint32_t>& logTable() const { return log_; }

private:
    std::uint32_t p_;
    Elem c_ = 0;
    std::vector<Elem> pow_;
    std::vector<std::uint32_t> log_;
};

inline FVector normalized(const std::vector<long long>& v, const FieldCtx& f) {
    FVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.normalize(v[i]);
    return out;
}

// Reduced row echelon form in place. Columns left to right, first nonzero row
// below the current one becomes the pivot. Returns pivot columns.
inline std::vector<std::size_t> rowReduce(FMatrix& m, std::size_t cols, const FieldCtx& f) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t pr = r;
        while (pr < m.size() && m[pr][c] == 0) ++pr;
        if (pr == m.size()) continue;
        std::swap(m[r], m[pr]);
        Elem iv = f.inv(m[r][c]);
        for (auto& x : m[r]) x = f.mul(x, iv);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Elem k = m[i][c];
            for (std::size_t j = 0; j < m[i].size(); ++j)
                m[i][j] = f.sub(m[i][j], f.mul(k, m[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(FMatrix m, const FieldCtx& f) {
    if (m.empty()) return 0;
    return rowReduce(m, m.front().size(), f).size();
}

// Solves a·x = b; free variables are set to zero.
inline std::optional<FVector> solveLinear(const FMatrix& a, const FVector& b, const FieldCtx& f) {
    std::size_t n = a.empty() ? 0 : a.front().size();
    FMatrix aug(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    auto piv = rowReduce(aug, n, f);
    for (std::size_t i = piv.size(); i < aug.size(); ++i)
        if (aug[i][n] != 0) return std::nullopt;
    FVector x(n, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][n];
    return x;
}

// mu with sum(mu_i * points_i) = target and sum(mu_i) = 1.
inline std::optional<FVector> solveAffineCombination(const std::vector<FVector>& points,
                                                     const FVector& target, const FieldCtx& f) {
    std::size_t m = target.size();
    for (const auto& pt : points)
        if (pt.size() != m) throw Error(Errc::BadInput, "points differ in dimension");
    FMatrix a(m + 1, FVector(points.size()));
    FVector b(m + 1);
    for (std::size_t d = 0; d < m; ++d) {
        for (std::size_t i = 0; i < points.size(); ++i) a[d][i] = points[i][d] % f.p();
        b[d] = target[d] % f.p();
    }
    for (std::size_t i = 0; i < points.size(); ++i) a[m][i] = 1;
    b[m] = 1;
    return solveLinear(a, b, f);
}

// True when mu is an affine combination of the points landing on target.
inline bool isAffineCombination(const std::vector<FVector>& points, const FVector& mu,
                                const FVector& target, const FieldCtx& f) {
    if (mu.size() != points.size()) return false;
    Elem total = 0;
    for (auto x : mu) total = f.add(total, x % f.p());
    if (total != 1) return false;
    for (std::size_t d = 0; d < target.size(); ++d) {
        Elem s = 0;
        for (std::size_t i = 0; i < points.size(); ++i) s = f.add(s, f.mul(mu[i] % f.p(), points[i][d]));
        if (s != target[d] % f.p()) return false;
    }
    return true;
}

} // namespace hqss::ff

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hqss/error.hpp"
#include "hqss/rng.hpp"

namespace hqss::qudit {

using Amplitude = std::complex<double>;

class QuditState {
public:
    QuditState() = default;
    explicit QuditState(std::vector<Amplitude> amps) : amps_(std::move(amps)) {}

    std::uint32_t dim() const { return static_cast<std::uint32_t>(amps_.size()); }
    const std::vector<Amplitude>& amps() const { return amps_; }
    std::vector<Amplitude>& amps() { return amps_; }
    Amplitude operator[](std::size_t k) const { return amps_[k]; }

    double norm() const {
        double s = 0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

private:
    std::vector<Amplitude> amps_;
};

struct BasisId {
    enum class Kind { Computational, Mub };
    Kind kind = Kind::Mub;
    std::uint32_t j = 0;

    static BasisId computational() { return {Kind::Computational, 0}; }
    static BasisId mub(std::uint32_t j) { return {Kind::Mub, j}; }

    bool operator==(const BasisId&) const = default;

    std::string toString() const { return kind == Kind::Computational ? "Z" : std::to_string(j); }
};

// omega^e with e reduced mod p.
inline Amplitude omegaPow(std::uint32_t p, std::uint64_t e) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(e % p) / p;
    return {std::cos(angle), std::sin(angle)};
}

inline void checkIndex(std::uint32_t p, std::uint32_t v, const char* what) {
    if (v >= p) throw Error(Errc::BadIndex, std::string(what) + " " + std::to_string(v) + " outside [0, p-1]");
}

// |e^(j)_l> = p^{-1/2} sum_k omega^{k(l + jk)} |k>
inline QuditState mubState(std::uint32_t p, std::uint32_t j, std::uint32_t l) {
    if (p < 2) throw Error(Errc::BadIndex, "dimension must be at least 2");
    checkIndex(p, j, "basis index");
    checkIndex(p, l, "level");
    std::vector<Amplitude> a(p);
    double s = 1.0 / std::sqrt(static_cast<double>(p));
    for (std::uint64_t k = 0; k < p; ++k) a[k] = s * omegaPow(p, k * ((l + j * k) % p));
    return QuditState(std::move(a));
}

inline QuditState computationalState(std::uint32_t p, std::uint32_t k) {
    checkIndex(p, k, "level");
    std::vector<Amplitude> a(p, 0.0);
    a[k] = 1.0;
    return QuditState(std::move(a));
}

inline QuditState basisState(std::uint32_t p, const BasisId& b, std::uint32_t l) {
    return b.kind == BasisId::Kind::Computational ? computationalState(p, l) : mubState(p, b.j, l);
}

inline Amplitude inner(const QuditState& a, const QuditState& b) {
    Amplitude s = 0;
    for (std::size_t k = 0; k < a.amps().size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

inline double overlap(const QuditState& a, const QuditState& b) {
    if (a.dim() != b.dim()) throw Error(Errc::BadInput, "overlap of states with different dimension");
    return std::abs(inner(a, b));
}

// U_{x,y} = X^x Y^y: amplitude k picks up omega^{xk + yk^2}.
inline QuditState applyShift(std::uint32_t x, std::uint32_t y, const QuditState& s) {
    std::uint32_t p = s.dim();
    auto out = s;
    for (std::uint64_t k = 0; k < p; ++k) out.amps()[k] *= omegaPow(p, (x % p) * k + (y % p) * (k * k % p));
    return out;
}

struct Measurement {
    std::uint32_t outcome = 0;
    QuditState collapsed;
};

inline std::vector<double> outcomeProbabilities(const QuditState& s, const BasisId& b) {
    std::uint32_t p = s.dim();
    std::vector<double> pr(p);
    for (std::uint32_t l = 0; l < p; ++l) pr[l] = std::norm(inner(basisState(p, b, l), s));
    return pr;
}

// Born-rule sample; the state collapses onto the measured basis vector.
inline Measurement measure(const QuditState& s, const BasisId& b, Rng& rng) {
    std::uint32_t p = s.dim();
    if (b.kind == BasisId::Kind::Mub) checkIndex(p, b.j, "basis index");
    auto pr = outcomeProbabilities(s, b);
    double total = 0;
    for (auto v : pr) total += v;
    double u = rng.unit() * total, acc = 0;
    std::uint32_t outcome = p - 1;
    for (std::uint32_t l = 0; l < p; ++l) {
        acc += pr[l];
        if (u < acc) {
            outcome = l;
            break;
        }
    }
    return {outcome, basisState(p, b, outcome)};
}

} // namespace hqss::qudit

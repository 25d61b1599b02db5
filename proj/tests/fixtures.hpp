#pragma once

#include <map>
#include <vector>

#include "hqss/ffield.hpp"
#include "hqss/simmons.hpp"

namespace fixtures {

using hqss::ff::FieldCtx;
using hqss::ff::FVector;

// Worked geometric setup over F_11, m=6, on {1234,1267,456}: nine points, two each for 2 and 7.
struct NamedPoint {
    int owner;
    int index;
    std::vector<long long> coords;
};

inline const std::vector<NamedPoint>& ninePoints() {
    static const std::vector<NamedPoint> pts{
        {1, 1, {1, 2, 2, 4, 5, 0}},   {2, 1, {2, 1, 2, 2, 4, 0}},     {2, 2, {3, 0, 1, 4, 3, 0}},
        {3, 1, {4, -1, 0, 1, 1, 0}},  {4, 1, {5, 5, -1, 0, 1, 0}},    {5, 1, {5, 9, 10, 5, 8, 0}},
        {6, 1, {7, 4, -3, 7, -1, 0}}, {7, 1, {8, -5, -4, -3, 0, 0}}, {7, 2, {9, -6, -5, -4, -1, 0}},
    };
    return pts;
}

// Worked setup on {124,136,235}: eight points, two each for 3 and 4.
inline const std::vector<NamedPoint>& eightPoints() {
    static const std::vector<NamedPoint> pts{
        {1, 1, {1, 2, 1, 4, 0, 0}},   {2, 1, {2, 1, 3, 2, 4, 0}},   {3, 1, {3, 0, 1, 1, 2, 0}},
        {3, 2, {4, -1, 0, 2, 3, 0}},  {4, 1, {5, 1, -1, 0, 1, 0}},  {4, 2, {6, 1, -2, -1, 0, 0}},
        {5, 1, {7, 1, -3, 3, -1, 0}}, {6, 1, {8, 4, -4, -3, 2, 0}},
    };
    return pts;
}

inline std::vector<FVector> pointsOf(const std::vector<NamedPoint>& all, const std::vector<int>& owners,
                                     const FieldCtx& f) {
    std::vector<FVector> out;
    for (const auto& p : all)
        for (int o : owners)
            if (p.owner == o) out.push_back(hqss::ff::normalized(p.coords, f));
    return out;
}

inline hqss::css::SimmonsSetup toSetup(const std::vector<NamedPoint>& all, const std::string& structure,
                                       const FieldCtx& f) {
    hqss::css::SimmonsSetup s;
    s.m = 6;
    s.structure = hqss::access::parseStructure(structure);
    for (const auto& p : all)
        s.points.push_back({p.owner, static_cast<std::size_t>(p.index), hqss::ff::normalized(p.coords, f)});
    s.k0 = FVector(6, 0);
    s.epsilon = hqss::css::unitDirection(6);
    return s;
}

// Reference coefficient vectors from the worked setups, before reduction mod 11.
inline const std::map<std::string, std::vector<long long>>& printedNineMu() {
    static const std::map<std::string, std::vector<long long>> m{
        {"1234", {4, 8, 7, 6, 9}}, {"1267", {4, 4, 6, 1, 10, 9}}, {"456", {3, 1, 8}}};
    return m;
}

inline const std::map<std::string, std::vector<long long>>& printedEightMu() {
    static const std::map<std::string, std::vector<long long>> m{
        {"124", {-1, -6, 2, -5}}, {"136", {2, 4, 10, 7}}, {"235", {7, -1, -8, 3}}};
    return m;
}

inline std::vector<int> digitsOf(const std::string& s) {
    std::vector<int> out;
    for (char c : s) out.push_back(c - '0');
    return out;
}

} // namespace fixtures

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hqss/access.hpp"
#include "hqss/catalog_data.hpp"

namespace hqss::access {

struct CatalogRow {
    int serial = 0;
    std::string text;
    AccessStructure structure;
    ClassId bucket = ClassId::G1;
    std::optional<Rational> optimalRate; // empty: hyperstar row, rate handled elsewhere
};

inline ClassId bucketOf(int serial) {
    for (int c = 0; c < 12; ++c)
        if (serial >= data::kBucketStart[c] && serial < data::kBucketStart[c + 1]) return static_cast<ClassId>(c + 1);
    throw Error(Errc::BadIndex, "catalog serial out of range: " + std::to_string(serial));
}

inline std::vector<CatalogRow> catalog() {
    std::vector<CatalogRow> rows;
    rows.reserve(data::kCatalogRows.size());
    for (std::size_t i = 0; i < data::kCatalogRows.size(); ++i) {
        CatalogRow r;
        r.serial = static_cast<int>(i) + 1;
        r.text = std::string(data::kCatalogRows[i]);
        r.structure = parseStructure(r.text);
        r.bucket = bucketOf(r.serial);
        if (r.serial >= 35) r.optimalRate = Rational(2, 3);
        else if (r.serial >= 24) r.optimalRate = Rational(1);
        rows.push_back(std::move(r));
    }
    return rows;
}

// Optimal rate implied by class membership; empty for hyperstar classes.
inline std::optional<Rational> classRate(ClassId c) {
    int v = static_cast<int>(c);
    if (v <= 4) return std::nullopt;
    if (v <= 6) return Rational(1);
    return Rational(2, 3);
}

} // namespace hqss::access

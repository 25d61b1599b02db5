#pragma once

#include <array>
#include <string_view>

namespace hqss::access::data {

// Three-edge hypercycle structures on 7 participants, rows 1..83 in order.
// Rows 63 and 67 repeat participant 1 in their first edge as printed; rows 14 and 18 coincide.
inline constexpr std::array<std::string_view, 83> kCatalogRows = {
    "{12345,16,17}",
    "{1234,156,17}",
    "{123,145,167}",
    "{12345,126,127}",
    "{1234,1256,127}",
    "{12345,1236,1237}",
    "{12345,12346,12347}",
    "{12345,12346,17}",
    "{126,12345,17}",
    "{1234,156,157}",
    "{12345,1236,17}",
    "{1234,1235,167}",
    "{1234,1256,17}",
    "{1234,1235,1267}",
    "{1234,125,167}",
    "{12345,12346,127}",
    "{12345,1236,127}",
    "{1234,1235,1267}",
    "{12345,1236,147}",
    "{1234,1256,137}",
    "{12345,126,137}",
    "{12345,1236,1247}",
    "{1235,1367,1247}",
    "{12345,34567,1267}",
    "{123456,123457,67}",
    "{123456,34567,127}",
    "{123456,1237,4567}",
    "{12345,12367,34567}",
    "{123456,123457,567}",
    "{123456,123457,234567}",
    "{123456,123457,4567}",
    "{123456,12347,4567}",
    "{123456,12347,34567}",
    "{123456,234567,12347}",
    "{1234,4567,3567}",
    "{12345,23457,167}",
    "{12345,1267,3457}",
    "{12345,34567,127}",
    "{12345,167,567}",
    "{12345,1267,567}",
    "{12345,1267,3467}",
    "{123456,12347,67}",
    "{123456,17,67}",
    "{123456,3457,127}",
    "{123456,127,67}",
    "{123456,3457,67}",
    "{123456,127,567}",
    "{1234,4567,127}",
    "{1234,1267,4567}",
    "{1234,4567,17}",
    "{12345,1237,567}",
    "{12345,567,17}",
    "{12345,34567,17}",
    "{12345,127,567}",
    "{12345,4567,127}",
    "{12345,4567,17}",
    "{1234,1267,456}",
    "{1234,167,456}",
    "{12345,23456,1267}",
    "{12345,12367,3467}",
    "{12345,12367,23467}",
    "{12345,1267,2367}",
    "{1123456,12347,457}",
    "{123456,12347,23457}",
    "{123456,127,237}",
    "{123456,12347,3457}",
    "{1123456,1237,3457}",
    "{123456,1237,347}",
    "{123456,1237,2347}",
    "{12345,1237,3467}",
    "{12345,23467,1237}",
    "{12345,23467,127}",
    "{12345,2367,127}",
    "{12345,1456,1267}",
    "{1234,1235,3467}",
    "{1234,2567,125}",
    "{12345,12346,457}",
    "{12345,12346,23457}",
    "{12345,126,267}",
    "{12345,12346,3457}",
    "{12345,1236,3457}",
    "{12345,1236,367}",
    "{12345,1236,2367}",
};

// First row of each class bucket G1..G12, plus one past the end.
inline constexpr std::array<int, 13> kBucketStart = {1, 8, 19, 23, 24, 28, 35, 48, 57, 59, 70, 75, 84};

} // namespace hqss::access::data

#pragma once

#include <array>

namespace bw {

// The six unordered coordinate pairs in fixed order: 12, 13, 14, 23, 24, 34.
inline constexpr std::array<std::array<int, 2>, 6> kPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int pair_index(int i, int j) {
    if (i > j) { int t = i; i = j; j = t; }
    constexpr int lut[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return lut[i][j];
}

// The two indices different from both i and j.
constexpr std::array<int, 2> complement_of(int i, int j) {
    std::array<int, 2> r{};
    int n = 0;
    for (int k = 0; k < 4; ++k)
        if (k != i && k != j) r[n++] = k;
    return r;
}

}  // namespace bw

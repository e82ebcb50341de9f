#pragma once

#include <vector>

namespace gclscore {

/// Edge mass split across the blocks induced by an l-cluster partition:
/// one entry per cluster (edges internal to it) and one per unordered
/// cluster pair (edges crossing it), in row-major pair order
/// (0,1),(0,2),...,(l-2,l-1). Entries are non-negative and jointly sum
/// to 1.
struct BlockVectors {
    std::vector<double> internal;  // length l
    std::vector<double> external;  // length l*(l-1)/2

    double total() const;
};

/// Index of unordered cluster pair (a, b), a != b, in the external vector.
inline int block_pair_index(int a, int b, int cluster_count) {
    if (a > b) { const int t = a; a = b; b = t; }
    // offset of row a = sum_{k<a} (l-1-k)
    return a * (cluster_count - 1) - a * (a - 1) / 2 + (b - a - 1);
}

}  // namespace gclscore

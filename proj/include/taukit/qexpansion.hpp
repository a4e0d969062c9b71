#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "taukit/bigint.hpp"

namespace taukit {

// Truncated coefficient sequence of the discriminant cusp form:
// coefficient at index n (1-based) is tau(n). Immutable after construction.
class QExpansion {
  public:
    explicit QExpansion(std::vector<BigInt> coeffs);  // coeffs[0] = tau(1), ...

    std::size_t limit() const { return coeffs_.size(); }
    // 1-based accessor matching the series index: at(n) = tau(n).
    const BigInt& at(std::size_t n) const;

  private:
    std::vector<BigInt> coeffs_;
};

// Largest expansion the toolkit will compute. Above this the exact
// int64/int128 staging of the series squarings loses its overflow headroom
// and the dense O(N^2) passes stop being desk-scale.
inline constexpr std::size_t kMaxExpansionLimit = 200'000;

QExpansion delta_qexpansion(std::size_t N);

// Versioned text cache: "TAUQEXP1 <N>" header, then one signed decimal
// coefficient per line. Bit-exact across platforms.
void save_qexpansion(const QExpansion& q, const std::string& path);
QExpansion load_qexpansion(const std::string& path);

// Build the expansion, preferring a cache file under dir (if nonempty).
QExpansion cached_qexpansion(std::size_t N, const std::string& dir);

}  // namespace taukit

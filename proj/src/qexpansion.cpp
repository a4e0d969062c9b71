#include "taukit/qexpansion.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace taukit {

QExpansion::QExpansion(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("QExpansion: empty coefficient list");
}

const BigInt& QExpansion::at(std::size_t n) const {
    if (n < 1 || n > coeffs_.size()) throw std::out_of_range("QExpansion::at: index outside 1..N");
    return coeffs_[n - 1];
}

namespace {

// Square a dense int64 polynomial (degrees 0..N-1), truncating at degree N-1.
// Accumulation runs in int128; the caller guarantees results fit int64.
std::vector<std::int64_t> square_trunc_i64(const std::vector<std::int64_t>& a) {
    const std::size_t N = a.size();
    std::vector<std::int64_t> out(N);
    for (std::size_t n = 0; n < N; ++n) {
        __int128 acc = 0;
        const std::size_t half = n / 2;
        for (std::size_t i = 0; i < half + (n & 1 ? 1 : 0); ++i) acc += static_cast<__int128>(a[i]) * a[n - i];
        acc *= 2;
        if ((n & 1) == 0) acc += static_cast<__int128>(a[half]) * a[half];
        out[n] = static_cast<std::int64_t>(acc);
    }
    return out;
}

std::vector<__int128> square_trunc_i128(const std::vector<std::int64_t>& a) {
    const std::size_t N = a.size();
    std::vector<__int128> out(N);
    for (std::size_t n = 0; n < N; ++n) {
        __int128 acc = 0;
        const std::size_t half = n / 2;
        for (std::size_t i = 0; i < half + (n & 1 ? 1 : 0); ++i) acc += static_cast<__int128>(a[i]) * a[n - i];
        acc *= 2;
        if ((n & 1) == 0) acc += static_cast<__int128>(a[half]) * a[half];
        out[n] = acc;
    }
    return out;
}

}  // namespace

QExpansion delta_qexpansion(std::size_t N) {
    if (N < 1) throw std::invalid_argument("delta_qexpansion: N must be >= 1");
    if (N > kMaxExpansionLimit)
        throw ResourceError("delta_qexpansion: N exceeds the configured memory ceiling");

    // Stage 1: cube of the eta series without its q^{1/8} prefactor, which is
    // sparse: coefficient (-1)^k (2k+1) at the triangular index k(k+1)/2.
    // The full product is then the 8th power of this series, shifted by one.
    std::vector<std::pair<std::size_t, std::int64_t>> sparse;
    for (std::size_t k = 0;; ++k) {
        std::size_t idx = k * (k + 1) / 2;
        if (idx >= N) break;
        std::int64_t c = static_cast<std::int64_t>(2 * k + 1);
        sparse.emplace_back(idx, (k & 1) ? -c : c);
    }

    // Stage 2: 6th root squared -> dense degree-(N-1) array, sparse x sparse.
    std::vector<std::int64_t> p6(N, 0);
    for (std::size_t i = 0; i < sparse.size(); ++i) {
        auto [di, ci] = sparse[i];
        if (2 * di < N) p6[2 * di] += ci * ci;
        for (std::size_t j = i + 1; j < sparse.size(); ++j) {
            auto [dj, cj] = sparse[j];
            std::size_t d = di + dj;
            if (d >= N) break;
            p6[d] += 2 * ci * cj;
        }
    }

    // Stages 3 and 4: two dense squarings. All intermediate values fit the
    // integer widths used here for N <= kMaxExpansionLimit.
    std::vector<std::int64_t> p12 = square_trunc_i64(p6);
    std::vector<__int128> p24 = square_trunc_i128(p12);

    std::vector<BigInt> coeffs(N);
    for (std::size_t n = 0; n < N; ++n) coeffs[n] = bi_from_i128(p24[n]);
    return QExpansion(std::move(coeffs));
}

void save_qexpansion(const QExpansion& q, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_qexpansion: cannot open " + path);
    out << "TAUQEXP1 " << q.limit() << "\n";
    for (std::size_t n = 1; n <= q.limit(); ++n) out << q.at(n).get_str() << "\n";
    if (!out) throw std::runtime_error("save_qexpansion: write failed for " + path);
}

QExpansion load_qexpansion(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_qexpansion: cannot open " + path);
    std::string magic;
    std::size_t N = 0;
    if (!(in >> magic >> N) || magic != "TAUQEXP1" || N < 1)
        throw std::runtime_error("load_qexpansion: bad header in " + path);
    std::vector<BigInt> coeffs;
    coeffs.reserve(N);
    std::string tok;
    for (std::size_t n = 0; n < N; ++n) {
        if (!(in >> tok)) throw std::runtime_error("load_qexpansion: truncated file " + path);
        coeffs.emplace_back(tok);
    }
    return QExpansion(std::move(coeffs));
}

QExpansion cached_qexpansion(std::size_t N, const std::string& dir) {
    if (dir.empty()) return delta_qexpansion(N);
    std::filesystem::create_directories(dir);
    std::string path = dir + "/tau_qexp_" + std::to_string(N) + ".txt";
    if (std::filesystem::exists(path)) {
        try {
            QExpansion q = load_qexpansion(path);
            if (q.limit() == N) return q;
        } catch (const std::exception&) {
            // fall through to recompute
        }
    }
    QExpansion q = delta_qexpansion(N);
    save_qexpansion(q, path);
    return q;
}

}  // namespace taukit

#ifndef NOMA_RNG_HPP
#define NOMA_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace noma {

// Counter-based generator (Philox-4x32, 10 rounds). The output stream is a
// pure function of (seed, stream, position), so trial blocks can be assigned
// to worker threads in any order and still produce identical draws.
class Philox4x32 {
public:
    explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0,
                        std::uint64_t position = 0)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          ctr_{static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32),
               static_cast<std::uint32_t>(position),
               static_cast<std::uint32_t>(position >> 32)} {}

    std::uint32_t next_u32() {
        if (have_ == 0) refill();
        return buf_[--have_];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unit-mean exponential.
    double next_exponential() { return -std::log1p(-next_double()); }

    // Pair of independent standard normals (Box-Muller).
    std::pair<double, double> next_normal_pair() {
        double u1 = next_double();
        while (u1 == 0.0) u1 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * next_double();
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static void round(std::array<std::uint32_t, 4>& c, std::uint32_t k0, std::uint32_t k1) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    }

    void refill() {
        std::array<std::uint32_t, 4> c = ctr_;
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int r = 0; r < 10; ++r) {
            if (r != 0) {
                k0 += kWeyl0;
                k1 += kWeyl1;
            }
            round(c, k0, k1);
        }
        // Outputs are consumed buf_[3], buf_[2], buf_[1], buf_[0] so that the
        // natural word order of the block comes out first.
        buf_ = {c[3], c[2], c[1], c[0]};
        have_ = 4;
        if (++ctr_[2] == 0) ++ctr_[3];
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> buf_{};
    int have_ = 0;
};

}  // namespace noma

#endif

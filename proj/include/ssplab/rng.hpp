#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace ssplab {

// Counter-based, splittable random stream. A stream is (key, counter); draws
// advance the counter only, so the sequence is a pure function of the key and
// the position. Children derived via split() have keys mixed from the parent
// key and the child name/index, which keeps every named stream independent of
// the order other streams are consumed in. Output is identical across
// platforms (no libstdc++ distributions anywhere near results).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x5851f42d4c957f2dULL)) {}

    Rng split(std::string_view name) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
        for (unsigned char ch : name) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        return Rng(key_, mix(key_ ^ mix(h)));
    }

    Rng split(std::uint64_t index) const { return Rng(key_, mix(key_ + mix(index + 1))); }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    // uniform in [0, 1)
    double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_u01() * static_cast<double>(n)) % n;
    }

    // index drawn from an (approximately normalized) probability row
    int sample_discrete(std::span<const double> probs) {
        const double u = next_u01();
        double acc = 0.0;
        int last_positive = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] <= 0.0) continue;
            acc += probs[i];
            last_positive = static_cast<int>(i);
            if (u < acc) return static_cast<int>(i);
        }
        return last_positive;  // roundoff tail
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t position() const { return counter_; }

private:
    Rng(std::uint64_t parent_key, std::uint64_t child_key) : key_(child_key ^ (parent_key << 1)) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace ssplab

/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_RNG_HH
#define TREEPACK_RNG_HH 1

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace treepack
{
    /// mt19937_64 with our own bounded draws, so that streams are identical
    /// across standard library implementations (std distributions are not).
    class Rng
    {
        private:
            std::mt19937_64 _engine;
            std::uint64_t _bits = 0;
            int _bits_left = 0;

        public:
            explicit Rng(std::uint64_t seed) : _engine(seed) { }

            auto next_u64() -> std::uint64_t { return _engine(); }

            /// Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
            auto below(std::uint64_t bound) -> std::uint64_t
            {
                std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
                for (;;) {
                    std::uint64_t x = _engine();
                    if (x < limit)
                        return x % bound;
                }
            }

            auto uniform_int(std::int64_t lo, std::int64_t hi) -> std::int64_t
            {
                return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
            }

            auto coin() -> bool
            {
                if (_bits_left == 0) {
                    _bits = _engine();
                    _bits_left = 64;
                }
                bool b = _bits & 1;
                _bits >>= 1;
                --_bits_left;
                return b;
            }

            /// Uniform in [0, 1) with 53 bits.
            auto real() -> double
            {
                return static_cast<double>(_engine() >> 11) * (1.0 / 9007199254740992.0);
            }

            template <typename T_>
            auto shuffle(std::vector<T_> & v) -> void
            {
                for (std::size_t i = v.size() ; i > 1 ; --i)
                    std::swap(v[i - 1], v[below(i)]);
            }
    };

    /// splitmix64 finaliser; used to derive child seeds (seed, index) -> seed.
    inline auto mix_seed(std::uint64_t seed, std::uint64_t index) -> std::uint64_t
    {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
}

#endif

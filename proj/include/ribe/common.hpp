#ifndef ribe_common_hpp
#define ribe_common_hpp

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ribe {

class Error : public std::runtime_error {
public:
    Error(const std::string& kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(kind) {}
    const std::string& kind() const { return kind_; }
private:
    std::string kind_;
};

inline Error invalid_parameter(const std::string& msg) { return Error("InvalidParameter", msg); }
inline Error disconnected_graph(const std::string& msg) { return Error("DisconnectedGraph", msg); }
inline Error unknown_name(const std::string& msg) { return Error("UnknownName", msg); }
inline Error generation_timeout(const std::string& msg) { return Error("GenerationTimeout", msg); }
inline Error non_injective(const std::string& msg) { return Error("NonInjective", msg); }
inline Error not_ultrametric(const std::string& msg) { return Error("NotUltrametric", msg); }
inline Error unknown_point(const std::string& msg) { return Error("UnknownPoint", msg); }
inline Error invalid_measure(const std::string& msg) { return Error("InvalidMeasure", msg); }
inline Error precondition_violated(const std::string& msg) { return Error("PreconditionViolated", msg); }
inline Error degenerate_chain(const std::string& msg) { return Error("DegenerateChain", msg); }
inline Error empty_induced_graph(const std::string& msg) { return Error("EmptyInducedGraph", msg); }
inline Error index_out_of_range(const std::string& msg) { return Error("IndexOutOfRange", msg); }
inline Error dimension_too_large(const std::string& msg) { return Error("DimensionTooLarge", msg); }
inline Error not_regular(const std::string& msg) { return Error("NotRegular", msg); }
inline Error negative_time(const std::string& msg) { return Error("NegativeTime", msg); }
inline Error parse_error(const std::string& msg) { return Error("ParseError", msg); }

// splitmix64; all seeded randomness in the project goes through this so
// results are bit-reproducible across platforms and thread counts.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        // rejection sampling to avoid modulo bias
        std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

}

#endif

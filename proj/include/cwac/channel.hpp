#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwac/codec.hpp"
#include "cwac/word.hpp"

namespace cwac {

// Fixed 64-bit generator so every platform replays identical trials.
// One multiply-xorshift finalizer over a Weyl sequence; the raw stream
// seeded with s is independent of the stream seeded with s+1, which is
// what lets each trial own the seed spec.seed + trial index.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform over [0, bound), unbiased via rejection
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

// Where the corruption lands: spread uniformly over the whole array, or
// shaped so every column takes its share (within one) of the losses and
// injections.
enum class Placement { Uniform, PerColumnCapped };

// Per-codeword corruption totals for the store-and-forward model:
// losses clear 1-bits (dropped packets), injections set 0-bits (stray
// packets).
struct ChannelSpec {
    int losses = 0;
    int injections = 0;
    std::uint64_t seed = 0;
    Placement policy = Placement::Uniform;
};

// Clears exactly `losses` one-positions and sets exactly `injections`
// zero-positions of the word, chosen by the generator seeded from
// spec.seed.  Deterministic given (word, spec).
std::vector<BitWord> corrupt(const ArrayWord& word, const ChannelSpec& spec);

struct SimStats {
    long trials = 0;
    long success = 0;  // decoded and equal to the sent message
    long wrong = 0;    // decoded but different
    long failure = 0;  // decoder returned nothing
    long inner_erasures_total = 0;

    double success_rate() const { return trials ? double(success) / double(trials) : 0.0; }
    double wrong_decode_rate() const { return trials ? double(wrong) / double(trials) : 0.0; }
    double failure_rate() const { return trials ? double(failure) / double(trials) : 0.0; }
    double mean_inner_erasures() const {
        return trials ? double(inner_erasures_total) / double(trials) : 0.0;
    }
};

// Monte Carlo over `trials` rounds of random message -> encode ->
// corrupt -> decode -> compare.  Trial t draws everything from a
// generator seeded with spec.seed + t, so the counts are bit-identical
// for any thread count.
SimStats simulate(const ConcatenatedCode& code, const ChannelSpec& spec, long trials,
                  int threads = 1);

// Results document: code and channel parameters, generator name, raw
// counts and derived rates.
std::string results_json(const ConcatenatedCode& code, const ChannelSpec& spec,
                         const SimStats& stats);

}  // namespace cwac

// Copyright 2026 The qcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCAP_COMMON_HPP
#define QCAP_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcap {

// Thrown for malformed inputs, schema violations, and contract breaches.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string &msg) : std::runtime_error(msg) {}
};

// Thrown when a computation cannot produce a meaningful number
// (e.g. Pearson r of a constant series). CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &msg) : std::runtime_error(msg) {}
};

class NotDefiniteOutcome : public ValidationError {
 public:
  explicit NotDefiniteOutcome(const std::string &msg) : ValidationError(msg) {}
};

// Deterministic pseudo-random stream. All randomness in the project flows
// through this wrapper so that sampled artifacts are reproducible bit-for-bit
// from (seed, stream) alone; std::uniform_*_distribution is avoided because
// its output is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : engine_(mix(seed, stream)) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t uniform_u64(uint64_t bound) {
    // Rejection sampling to avoid modulo bias.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 bits of randomness.
  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in [lo, hi).
  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
  }

  template <typename T>
  void shuffle(std::vector<T> &v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_u64(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  static uint64_t mix(uint64_t seed, uint64_t stream) {
    // splitmix64 finalizer over (seed, stream) so streams are independent.
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

// Formats a double with 17 significant digits, enough to round-trip exactly.
std::string format_double17(double v);

std::string base64_encode(const std::vector<uint8_t> &data);
std::vector<uint8_t> base64_decode(const std::string &text);

// Runs fn(i) for i in [0, count) across up to `threads` workers. Work is
// split into contiguous chunks so output written to per-index slots is
// independent of scheduling.
void parallel_for(size_t count, const std::function<void(size_t)> &fn,
                  unsigned threads = 0);

}  // namespace qcap

#endif  // QCAP_COMMON_HPP

// Copyright 2026 The coinwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COINWALK_RNG_HPP
#define COINWALK_RNG_HPP

#include <cstdint>
#include <random>

namespace coinwalk {

/// Reproducible random stream identified by (master_seed, stream_index).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard; doubles are formed from the top 53 bits by hand because the
/// standard distributions are implementation-defined. Two streams with the
/// same pair produce bit-identical draws on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to decorrelate (seed, index) pairs.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace coinwalk

#endif  // COINWALK_RNG_HPP

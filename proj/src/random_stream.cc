// Copyright 2026 The Cipherlab Authors
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

#include "cipherlab/random_stream.h"

#include <limits>

namespace cipherlab {

std::uint64_t MixSeed(std::uint64_t value) {
  value += 0x9e3779b97f4a7c15ULL;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
  return value ^ (value >> 31);
}

SeededStream SeededStream::Derive(std::uint64_t seed,
                                  std::initializer_list<std::uint64_t> coords) {
  std::uint64_t state = MixSeed(seed);
  for (std::uint64_t c : coords) state = MixSeed(state ^ MixSeed(c));
  return SeededStream(state);
}

std::uint64_t SeededStream::UniformBelow(std::uint64_t bound) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  // Largest multiple of bound that fits, minus one.
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  std::uint64_t draw = NextU64();
  while (draw > limit) draw = NextU64();
  return draw % bound;
}

double SeededStream::UniformUnit() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

}  // namespace cipherlab

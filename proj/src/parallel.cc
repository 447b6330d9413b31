// Copyright 2026 The forgetlens Authors.
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

#include "forgetlens/parallel.h"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace forgetlens::parallel {

namespace {

std::atomic<int> g_override{-1};  // -1: not set, 0: auto, >0: fixed

int env_threads() {
  static const int value = [] {
    const char* raw = std::getenv("FORGETLENS_THREADS");
    if (raw == nullptr) return 0;
    char* end = nullptr;
    long parsed = std::strtol(raw, &end, 10);
    if (end == raw || parsed < 0) return 0;
    return static_cast<int>(parsed);
  }();
  return value;
}

int hardware_default() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

int max_threads() {
  int v = g_override.load(std::memory_order_relaxed);
  if (v < 0) v = env_threads();
  if (v == 0) v = hardware_default();
  return v < 1 ? 1 : v;
}

void set_max_threads(int n) {
  g_override.store(n < 0 ? 0 : n, std::memory_order_relaxed);
}

}  // namespace forgetlens::parallel

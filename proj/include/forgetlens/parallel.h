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

#pragma once

namespace forgetlens::parallel {

// Number of threads the OpenMP kernels may use. Resolution order:
// a value set via set_max_threads(), then the FORGETLENS_THREADS
// environment variable, then the OpenMP default. 0 means "auto".
// Every kernel reduces with integer sums, so results are identical
// for any thread count.
int max_threads();

// Programmatic override, primarily for tests. 0 restores auto.
void set_max_threads(int n);

}  // namespace forgetlens::parallel

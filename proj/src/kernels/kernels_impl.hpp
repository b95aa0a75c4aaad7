// Copyright 2026 The pel Authors
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

#ifndef PEL_KERNELS_KERNELS_IMPL_HPP
#define PEL_KERNELS_KERNELS_IMPL_HPP

#include "pel/kernels/kernels.hpp"

namespace pel::kernels::detail {

#ifdef PEL_HAVE_AVX2_KERNELS
const KernelTable &avx2_table();
#endif

}  // namespace pel::kernels::detail

#endif

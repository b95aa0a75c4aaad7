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

#ifndef PEL_PERMANENT_HPP
#define PEL_PERMANENT_HPP

#include "pel/matrix.hpp"

namespace pel {

/// Permanent of a square matrix by Glynn's formula with Gray-code ordering,
/// O(2^(n-1) n). The permanent of the 0x0 matrix is 1.
cplx permanent(const CMatrix &a);

}  // namespace pel

#endif

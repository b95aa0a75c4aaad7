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

#include <atomic>

#include "kernels_impl.hpp"
#include "pel/error.hpp"

namespace pel::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(PEL_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable *detect() {
#ifdef PEL_HAVE_AVX2_KERNELS
    if (cpu_has_avx2()) {
        return &detail::avx2_table();
    }
#endif
    return &scalar_table();
}

std::atomic<const KernelTable *> &active_slot() {
    static std::atomic<const KernelTable *> slot{detect()};
    return slot;
}

}  // namespace

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::Scalar};
    if (cpu_has_avx2()) {
        out.push_back(Backend::Avx2);
    }
    return out;
}

bool backend_available(Backend backend) {
    return backend == Backend::Scalar || (backend == Backend::Avx2 && cpu_has_avx2());
}

const KernelTable &table(Backend backend) {
    if (!backend_available(backend)) {
        throw Error(ErrorKind::Validation, std::string("kernel backend '") + backend_name(backend) +
                                               "' is not available on this CPU/build");
    }
#ifdef PEL_HAVE_AVX2_KERNELS
    if (backend == Backend::Avx2) {
        return detail::avx2_table();
    }
#endif
    return scalar_table();
}

const KernelTable &active() {
    return *active_slot().load(std::memory_order_acquire);
}

void force_backend(Backend backend) {
    active_slot().store(&table(backend), std::memory_order_release);
}

void reset_backend() {
    active_slot().store(detect(), std::memory_order_release);
}

const char *backend_name(Backend backend) {
    switch (backend) {
        case Backend::Scalar:
            return "scalar";
        case Backend::Avx2:
            return "avx2";
    }
    return "unknown";
}

}  // namespace pel::kernels

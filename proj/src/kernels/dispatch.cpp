#include <atomic>
#include <stdexcept>
#include <string>

#include "uvprop/kernels.hpp"

#include "kernel_math.hpp"

namespace uvprop::kernels {

namespace {

bool cpu_has_avx2_fma() {
#if defined(UVPROP_BUILD_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend resolve(Backend b) {
    if (b != Backend::Auto) return b;
    return cpu_has_avx2_fma() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend> g_backend{resolve(Backend::Auto)};

}  // namespace

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::Auto:
        case Backend::Scalar: return true;
        case Backend::Avx2: return cpu_has_avx2_fma();
    }
    return false;
}

void set_backend(Backend b) {
    if (!backend_supported(b))
        throw std::invalid_argument("kernel: backend \"" + std::string(backend_name(b)) +
                                    "\" not supported on this CPU");
    g_backend.store(resolve(b), std::memory_order_relaxed);
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::Auto: return "auto";
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "?";
}

Backend parse_backend(std::string_view name) {
    if (name == "auto") return Backend::Auto;
    if (name == "scalar") return Backend::Scalar;
    if (name == "avx2") return Backend::Avx2;
    throw std::invalid_argument("kernel: expected auto|scalar|avx2, got \"" + std::string(name) +
                                "\"");
}

void compute_field(const FieldParams& p, const FieldBatch& b) {
#if defined(UVPROP_BUILD_AVX2)
    if (active_backend() == Backend::Avx2) {
        compute_field_avx2(p, b);
        return;
    }
#endif
    compute_field_scalar(p, b);
}

double kernel_log10(double x) { return detail::log10_impl(x); }

void kernel_sincos(double x, double& sin_out, double& cos_out) {
    const detail::SinCos sc = detail::sincos_impl(x);
    sin_out = sc.s;
    cos_out = sc.c;
}

}  // namespace uvprop::kernels

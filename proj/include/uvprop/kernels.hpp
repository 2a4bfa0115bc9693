#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace uvprop::kernels {

/// Uniform constants for one batch of coherent field evaluations.
struct FieldParams {
    double vehicle_height;  ///< h_v, m
    double street_width;    ///< S, m
    double wavelength;      ///< m
    double gamma_g;         ///< ground reflection coefficient
    double gamma_b;         ///< wall reflection coefficient
};

/// One batch of sweep points. All spans share the same length; num_wr holds
/// the per-point wall-reflection count (0, 1 or 2). Output spans are filled
/// per point:
///   d_los   = sqrt(D^2 + (H-h_v)^2)
///   d_ref_g = sqrt(D^2 + (H+h_v)^2)
///   d_ref_b = sqrt(S^2 + D^2 + (H-h_v)^2)
///   dphi_*  = (2*pi/lambda) * (d_los - d_ref_*)
///   pl_db   = 20*log10(4*pi*d_los/lambda) - 20*log10(|F|),
///             F = 1 + gamma_g*e^{i dphi_g} + num_wr*gamma_b*e^{i dphi_b},
///             with |F| floored at 1e-12 (clipped flag set when the floor
///             engages).
struct FieldBatch {
    std::span<const double> dist;           ///< D per point
    std::span<const double> alt;            ///< H per point
    std::span<const std::uint8_t> num_wr;   ///< wall-reflection count
    std::span<double> d_los;
    std::span<double> d_ref_g;
    std::span<double> d_ref_b;
    std::span<double> dphi_g;
    std::span<double> dphi_b;
    std::span<double> pl_db;
    std::span<std::uint8_t> clipped;
};

inline constexpr double kDeepNullFloor = 1e-12;

enum class Backend { Auto, Scalar, Avx2 };

bool backend_supported(Backend b);
void set_backend(Backend b);     ///< Auto picks the widest supported lane
Backend active_backend();        ///< resolved backend (never Auto)
std::string_view backend_name(Backend b);
Backend parse_backend(std::string_view name);  ///< "auto" | "scalar" | "avx2"

/// Dispatched entry point; the selected variant is bit-identical to the
/// scalar reference.
void compute_field(const FieldParams& p, const FieldBatch& b);

/// Reference implementation; defines the exact arithmetic every variant
/// must reproduce.
void compute_field_scalar(const FieldParams& p, const FieldBatch& b);

#if defined(UVPROP_BUILD_AVX2)
void compute_field_avx2(const FieldParams& p, const FieldBatch& b);
#endif

/// Polynomial transcendental kernels shared by all variants. Supported
/// domain for sincos is |x| < 2^31 * pi/4; log10 expects a positive normal.
double kernel_log10(double x);
void kernel_sincos(double x, double& sin_out, double& cos_out);

}  // namespace uvprop::kernels

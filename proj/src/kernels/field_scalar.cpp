#include <cstddef>

#include "uvprop/kernels.hpp"

#include "kernel_math.hpp"

namespace uvprop::kernels {

void compute_field_scalar(const FieldParams& p, const FieldBatch& b) {
    const detail::FieldConsts c =
        detail::make_consts(p.vehicle_height, p.street_width, p.wavelength, p.gamma_g, p.gamma_b);
    const std::size_t n = b.dist.size();
    for (std::size_t i = 0; i < n; ++i) {
        const detail::PointResult r =
            detail::eval_point(c, b.dist[i], b.alt[i], static_cast<double>(b.num_wr[i]));
        b.d_los[i] = r.d_los;
        b.d_ref_g[i] = r.d_ref_g;
        b.d_ref_b[i] = r.d_ref_b;
        b.dphi_g[i] = r.dphi_g;
        b.dphi_b[i] = r.dphi_b;
        b.pl_db[i] = r.pl_db;
        b.clipped[i] = r.clipped ? 1 : 0;
    }
}

}  // namespace uvprop::kernels

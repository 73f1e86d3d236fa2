#include "levyheat/recipes.hpp"

#include <cmath>

#include "levyheat/random.hpp"

namespace levyheat {

Field make_zero(const GridSpec& grid) { return Field::zero(grid, Rep::Fourier); }

Field make_constant(const GridSpec& grid, cplx value) {
    Field f = Field::zero(grid, Rep::Fourier);
    f.mutable_values()[0] = value;
    return f;
}

Field make_single_mode(const GridSpec& grid, std::array<int, 2> k0, cplx amplitude) {
    if (grid.dim == 1) k0[1] = 0;
    Field f = Field::zero(grid, Rep::Fourier);
    f.mutable_values()[grid.flat_index(k0)] = amplitude;
    return f;
}

Field make_random_decay(const GridSpec& grid, double slope, std::uint64_t seed,
                        bool mean_zero) {
    RngStream rng(seed);
    Field f = Field::zero(grid, Rep::Fourier);
    auto& vals = f.mutable_values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double xi = grid.frequency_norm(i);
        double amp = std::pow(1.0 + xi * xi, -slope / 2.0);
        vals[i] = amp * cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
    }
    // Conjugate symmetrization makes the physical field real. Indices whose
    // mirror is themselves (0 and the Nyquist lines) become purely real.
    const int n = grid.n;
    auto mirror = [n](int k) { return k == -n / 2 ? k : -k; };
    Field sym = Field::zero(grid, Rep::Fourier);
    auto& sv = sym.mutable_values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        auto k = grid.signed_indices(i);
        std::size_t j = grid.flat_index({mirror(k[0]), mirror(k[1])});
        sv[i] = 0.5 * (vals[i] + std::conj(vals[j]));
    }
    if (mean_zero) sv[0] = cplx(0.0, 0.0);
    return sym;
}

SpaceTimeField make_constant_in_time(const TimeGrid& tgrid, const Field& frame) {
    return SpaceTimeField::constant(tgrid, frame);
}

SpaceTimeField make_time_window(const TimeGrid& tgrid, const Field& frame, double on_from,
                                double on_until) {
    std::vector<Field> frames;
    frames.reserve(static_cast<std::size_t>(tgrid.steps) + 1);
    const Field off = Field::zero(frame.grid(), frame.rep());
    for (int n = 0; n <= tgrid.steps; ++n) {
        double t = tgrid.node(n);
        frames.push_back(t >= on_from && t < on_until ? frame : off);
    }
    return SpaceTimeField(tgrid, std::move(frames));
}

} // namespace levyheat

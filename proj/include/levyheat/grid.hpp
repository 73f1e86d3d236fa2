#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "levyheat/errors.hpp"

namespace levyheat {

using cplx = std::complex<double>;

/// Periodic grid on the torus [0, L)^d, d in {1, 2}, with n points per axis.
///
/// Grid points are x_m = m L / n. Integer frequency indices run over
/// {-n/2, ..., n/2 - 1} per axis; the continuous frequency of index k is
/// xi_k = k / L.
struct GridSpec {
    int dim = 1;
    int n = 8;
    double period = 1.0;

    /// Validating factory: dim in {1,2}, n a power of two >= 8, period > 0.
    static GridSpec make(int dim, int n, double period);

    std::size_t point_count() const;

    /// Signed integer frequency index for a storage index along one axis.
    int signed_index(int i) const { return i < n / 2 ? i : i - n; }

    /// Per-axis signed indices of a flat storage index (second entry 0 if dim==1).
    std::array<int, 2> signed_indices(std::size_t flat) const;

    /// Continuous frequency components of a flat storage index.
    std::array<double, 2> frequency(std::size_t flat) const;

    /// |xi| of the lattice frequency at a flat storage index.
    double frequency_norm(std::size_t flat) const;

    /// Flat storage index of per-axis signed indices.
    std::size_t flat_index(std::array<int, 2> k) const;

    double min_nonzero_frequency() const { return 1.0 / period; }
    double max_frequency_norm() const;

    bool operator==(const GridSpec&) const = default;
};

enum class Rep { Physical, Fourier };

/// Complex-valued function sample on a GridSpec, in either physical or
/// Fourier representation. Treated as an immutable value after construction;
/// every operation below returns a fresh Field.
class Field {
public:
    Field(GridSpec grid, Rep rep, std::vector<cplx> values);

    static Field zero(const GridSpec& grid, Rep rep);

    const GridSpec& grid() const { return grid_; }
    Rep rep() const { return rep_; }
    std::span<const cplx> values() const { return values_; }
    cplx operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    /// Construction-time mutable access. Fields handed out of an operation
    /// must not be mutated afterwards.
    std::vector<cplx>& mutable_values() { return values_; }

private:
    GridSpec grid_;
    Rep rep_;
    std::vector<cplx> values_;
};

/// DFT, normalized so the coefficient at k equals
/// (1/n^d) sum_m f(x_m) e^{-2 pi i k.m/n} -- the discrete Fourier coefficient.
Field forward_transform(const Field& f);

/// Inverse DFT: value at x_m equals sum_k c_k e^{+2 pi i k.m/n}.
Field inverse_transform(const Field& f);

/// Idempotent conversions.
Field to_fourier(const Field& f);
Field to_physical(const Field& f);

/// Rectangle-rule L^p norm on grid points: ((L/n)^d sum_m |f(x_m)|^p)^{1/p}.
/// Transforms to the physical representation internally if needed. p >= 1.
double lp_norm(const Field& f, double p);

/// Exact spectral resampling to a finer grid (new_n >= n, power of two).
/// Band-limited fields represent the same continuous function afterwards.
Field resample(const Field& f, int new_n);

/// Modulus of the zero-frequency coefficient.
double zero_mode_modulus(const Field& f);

/// Tolerance below which a zero mode counts as mean-zero.
inline constexpr double kMeanZeroTol = 1e-12;

} // namespace levyheat

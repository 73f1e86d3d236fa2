#include "levyheat/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace levyheat {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFTW plan cache. Planning is not thread-safe, so creation is serialized;
// executing a cached plan on fresh buffers via fftw_execute_dft is safe.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(dim, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t total = dim == 1 ? static_cast<std::size_t>(n)
                                     : static_cast<std::size_t>(n) * n;
        std::vector<cplx> in(total), out(total);
        auto* fin = reinterpret_cast<fftw_complex*>(in.data());
        auto* fout = reinterpret_cast<fftw_complex*>(out.data());
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = dim == 1 ? fftw_plan_dft_1d(n, fin, fout, sign, flags)
                                  : fftw_plan_dft_2d(n, n, fin, fout, sign, flags);
        plans_[key] = plan;
        return plan;
    }

private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

std::vector<cplx> execute(const GridSpec& g, std::span<const cplx> in, int sign) {
    fftw_plan plan = PlanCache::instance().get(g.dim, g.n, sign);
    std::vector<cplx> out(in.size());
    // c2c out-of-place transforms preserve their input.
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

} // namespace

GridSpec GridSpec::make(int dim, int n, double period) {
    if (dim != 1 && dim != 2)
        throw contract_error("GridSpec: dim must be 1 or 2");
    if (!power_of_two(n) || n < 8)
        throw contract_error("GridSpec: n must be a power of two >= 8");
    if (!(period > 0.0))
        throw contract_error("GridSpec: period must be positive");
    return GridSpec{dim, n, period};
}

std::size_t GridSpec::point_count() const {
    std::size_t total = static_cast<std::size_t>(n);
    if (dim == 2) total *= static_cast<std::size_t>(n);
    return total;
}

std::array<int, 2> GridSpec::signed_indices(std::size_t flat) const {
    if (dim == 1) return {signed_index(static_cast<int>(flat)), 0};
    int i0 = static_cast<int>(flat / static_cast<std::size_t>(n));
    int i1 = static_cast<int>(flat % static_cast<std::size_t>(n));
    return {signed_index(i0), signed_index(i1)};
}

std::array<double, 2> GridSpec::frequency(std::size_t flat) const {
    auto k = signed_indices(flat);
    return {k[0] / period, k[1] / period};
}

double GridSpec::frequency_norm(std::size_t flat) const {
    auto xi = frequency(flat);
    return dim == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
}

std::size_t GridSpec::flat_index(std::array<int, 2> k) const {
    auto wrap = [this](int ki) {
        if (ki < -n / 2 || ki > n / 2 - 1)
            throw contract_error("GridSpec: frequency index out of range");
        return static_cast<std::size_t>(ki >= 0 ? ki : ki + n);
    };
    if (dim == 1) return wrap(k[0]);
    return wrap(k[0]) * static_cast<std::size_t>(n) + wrap(k[1]);
}

double GridSpec::max_frequency_norm() const {
    double half = (n / 2) / period;
    return dim == 1 ? half : half * std::sqrt(2.0);
}

Field::Field(GridSpec grid, Rep rep, std::vector<cplx> values)
    : grid_(grid), rep_(rep), values_(std::move(values)) {
    if (values_.size() != grid_.point_count())
        throw contract_error("Field: value count does not match grid");
}

Field Field::zero(const GridSpec& grid, Rep rep) {
    return Field(grid, rep, std::vector<cplx>(grid.point_count()));
}

Field forward_transform(const Field& f) {
    if (f.rep() != Rep::Physical)
        throw contract_error("forward_transform: field is not in physical representation");
    auto out = execute(f.grid(), f.values(), FFTW_FORWARD);
    double scale = 1.0 / static_cast<double>(f.grid().point_count());
    for (auto& v : out) v *= scale;
    return Field(f.grid(), Rep::Fourier, std::move(out));
}

Field inverse_transform(const Field& f) {
    if (f.rep() != Rep::Fourier)
        throw contract_error("inverse_transform: field is not in Fourier representation");
    auto out = execute(f.grid(), f.values(), FFTW_BACKWARD);
    return Field(f.grid(), Rep::Physical, std::move(out));
}

Field to_fourier(const Field& f) {
    return f.rep() == Rep::Fourier ? f : forward_transform(f);
}

Field to_physical(const Field& f) {
    return f.rep() == Rep::Physical ? f : inverse_transform(f);
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0))
        throw contract_error("lp_norm: p must be >= 1");
    const Field phys = to_physical(f);
    const GridSpec& g = phys.grid();
    double cell = std::pow(g.period / g.n, g.dim);
    double acc = 0.0;
    if (p == 2.0) {
        for (const cplx& v : phys.values()) acc += std::norm(v);
        return std::sqrt(cell * acc);
    }
    if (p == 1.0) {
        for (const cplx& v : phys.values()) acc += std::abs(v);
        return cell * acc;
    }
    for (const cplx& v : phys.values()) acc += std::pow(std::abs(v), p);
    return std::pow(cell * acc, 1.0 / p);
}

Field resample(const Field& f, int new_n) {
    const GridSpec& g = f.grid();
    if (new_n < g.n)
        throw contract_error("resample: only upsampling is supported");
    if (new_n == g.n) return f;
    GridSpec fine = GridSpec::make(g.dim, new_n, g.period);
    const Field four = to_fourier(f);
    Field out = Field::zero(fine, Rep::Fourier);
    for (std::size_t i = 0; i < four.size(); ++i)
        out.mutable_values()[fine.flat_index(g.signed_indices(i))] = four[i];
    return f.rep() == Rep::Physical ? to_physical(out) : out;
}

double zero_mode_modulus(const Field& f) {
    return std::abs(to_fourier(f)[0]);
}

} // namespace levyheat

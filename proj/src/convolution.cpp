#include "levyheat/convolution.hpp"

#include <cmath>
#include <thread>

#include "levyheat/littlewood_paley.hpp"

namespace levyheat {

TimeGrid TimeGrid::make(double horizon, int steps) {
    if (!(horizon > 0.0))
        throw contract_error("TimeGrid: horizon must be positive");
    if (steps < 1)
        throw contract_error("TimeGrid: steps must be >= 1");
    return TimeGrid{horizon, steps};
}

SpaceTimeField::SpaceTimeField(TimeGrid tgrid, std::vector<Field> frames)
    : tgrid_(tgrid), frames_(std::move(frames)) {
    if (frames_.size() != static_cast<std::size_t>(tgrid_.steps) + 1)
        throw contract_error("SpaceTimeField: need steps+1 frames");
    for (const Field& f : frames_)
        if (!(f.grid() == frames_.front().grid()))
            throw contract_error("SpaceTimeField: frames must share one grid");
}

SpaceTimeField SpaceTimeField::constant(const TimeGrid& tgrid, const Field& frame) {
    return SpaceTimeField(tgrid, std::vector<Field>(static_cast<std::size_t>(tgrid.steps) + 1,
                                                    frame));
}

Field evolve(const SpaceTimeField& g, int n_t, int n_s, const SemigroupKind& kind) {
    if (n_s > n_t)
        throw contract_error("evolve: source node must not exceed target node");
    if (n_s < 0 || n_t > g.steps())
        throw contract_error("evolve: node out of range");
    double elapsed = g.time_grid().node(n_t) - g.time_grid().node(n_s);
    return semigroup_apply(g.frame(n_s), elapsed, kind);
}

double prop1_lhs(const SpaceTimeField& g, double p, const SemigroupKind& kind) {
    if (!(p >= 1.0))
        throw contract_error("prop1_lhs: p must be >= 1");
    const double dt = g.time_grid().dt();
    double outer = 0.0;
    for (int n = 0; n < g.steps(); ++n) {
        double inner = 0.0;
        for (int m = 0; m < n; ++m)
            inner += dt * std::pow(lp_norm(evolve(g, n, m, kind), p), p);
        outer += dt * inner;
    }
    return outer;
}

SpaceTimeField stochastic_convolution(const SpaceTimeField& g, const JumpPath& path,
                                      Scheme scheme, const SemigroupKind& kind) {
    if (path.horizon != g.time_grid().horizon)
        throw contract_error("stochastic_convolution: path and field horizons differ");

    const TimeGrid& tg = g.time_grid();
    const GridSpec& grid = g.grid();
    const int steps = tg.steps;
    const double dt = tg.dt();
    const std::size_t modes = grid.point_count();

    std::vector<double> rate(modes);
    for (std::size_t i = 0; i < modes; ++i) rate[i] = kind.rate(grid.frequency_norm(i));

    std::vector<Field> g_hat;
    g_hat.reserve(static_cast<std::size_t>(steps) + 1);
    for (int m = 0; m <= steps; ++m) g_hat.push_back(to_fourier(g.frame(m)));

    std::vector<Field> u(static_cast<std::size_t>(steps) + 1,
                         Field::zero(grid, Rep::Fourier));

    // Step-decay table dec[r][i] = e^{-rate_i * r * dt}, built only for the
    // grid-aligned double sums (drift and Euler terms).
    auto build_decay = [&]() {
        std::vector<std::vector<double>> dec(static_cast<std::size_t>(steps) + 1,
                                             std::vector<double>(modes));
        for (int r = 0; r <= steps; ++r)
            for (std::size_t i = 0; i < modes; ++i)
                dec[static_cast<std::size_t>(r)][i] = std::exp(-rate[i] * (r * dt));
        return dec;
    };

    if (scheme == Scheme::ExactJump) {
        for (std::size_t jmp = 0; jmp < path.times.size(); ++jmp) {
            const double tau = path.times[jmp];
            const double z = path.sizes[jmp];
            int floor_node = static_cast<int>(std::floor(tau / dt));
            if (floor_node > steps) floor_node = steps;
            int first = floor_node;
            if (tg.node(first) < tau) ++first;
            const auto gv = g_hat[static_cast<std::size_t>(floor_node)].values();
            for (int n = first; n <= steps; ++n) {
                auto& uv = u[static_cast<std::size_t>(n)].mutable_values();
                const double elapsed = tg.node(n) - tau;
                for (std::size_t i = 0; i < modes; ++i)
                    uv[i] += z * std::exp(-rate[i] * elapsed) * gv[i];
            }
        }
        if (path.mean_rate != 0.0) {
            const auto dec = build_decay();
            for (int n = 1; n <= steps; ++n) {
                auto& uv = u[static_cast<std::size_t>(n)].mutable_values();
                for (int m = 0; m < n; ++m) {
                    const auto& d = dec[static_cast<std::size_t>(n - m)];
                    const auto gv = g_hat[static_cast<std::size_t>(m)].values();
                    const double w = path.mean_rate * dt;
                    for (std::size_t i = 0; i < modes; ++i) uv[i] -= w * d[i] * gv[i];
                }
            }
        }
    } else {
        const auto dec = build_decay();
        std::vector<double> dx(static_cast<std::size_t>(steps));
        for (int m = 0; m < steps; ++m)
            dx[static_cast<std::size_t>(m)] = increment(path, tg.node(m), tg.node(m + 1));
        for (int n = 1; n <= steps; ++n) {
            auto& uv = u[static_cast<std::size_t>(n)].mutable_values();
            for (int m = 0; m < n; ++m) {
                const auto& d = dec[static_cast<std::size_t>(n - m)];
                const auto gv = g_hat[static_cast<std::size_t>(m)].values();
                const double w = dx[static_cast<std::size_t>(m)];
                for (std::size_t i = 0; i < modes; ++i) uv[i] += w * d[i] * gv[i];
            }
        }
    }
    return SpaceTimeField(tg, std::move(u));
}

namespace {

double frame_norm(const SolutionNorm& norm, const DyadicPartition& part, const Field& f) {
    if (norm.family == SolutionNorm::Family::Sobolev)
        return sobolev_norm(f, norm.k, norm.p, norm.homogeneous);
    return besov_norm(part, f, norm.k, norm.p, norm.homogeneous);
}

} // namespace

McEstimate mc_solution_norm_in(const SpaceTimeField& g, const LevyMeasureSpec& nu,
                               const SolutionNorm& norm, int samples, std::uint64_t seed,
                               const SemigroupKind& kind, int workers) {
    if (samples < 2)
        throw contract_error("mc_solution_norm: need at least 2 samples");
    if (workers < 1) workers = 1;
    if (norm.homogeneous)
        for (int n = 0; n <= g.steps(); ++n)
            if (zero_mode_modulus(g.frame(n)) > kMeanZeroTol)
                throw singularity_error(
                    "mc_solution_norm: homogeneous norm requires mean-zero g frames");

    // Share the Fourier frames and the partition across all paths.
    const TimeGrid& tg = g.time_grid();
    std::vector<Field> hat;
    hat.reserve(static_cast<std::size_t>(g.steps()) + 1);
    for (int n = 0; n <= g.steps(); ++n) hat.push_back(to_fourier(g.frame(n)));
    const SpaceTimeField g_hat(tg, std::move(hat));
    const DyadicPartition part = DyadicPartition::build(g.grid());

    const double dt = tg.dt();
    std::vector<double> stat(static_cast<std::size_t>(samples));
    auto run_slice = [&](int first) {
        for (int s = first; s < samples; s += workers) {
            RngStream rng = RngStream::derive(seed, static_cast<std::uint64_t>(s));
            JumpPath path = sample_path(nu, tg.horizon, rng);
            SpaceTimeField u = stochastic_convolution(g_hat, path, Scheme::ExactJump, kind);
            double acc = 0.0;
            for (int n = 0; n < tg.steps; ++n)
                acc += dt * std::pow(frame_norm(norm, part, u.frame(n)), norm.p);
            stat[static_cast<std::size_t>(s)] = acc;
        }
    };

    if (workers == 1) {
        run_slice(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_slice, w);
        for (auto& th : pool) th.join();
    }

    double mean = 0.0;
    for (double y : stat) mean += y;
    mean /= samples;
    double var = 0.0;
    for (double y : stat) var += (y - mean) * (y - mean);
    var /= (samples - 1);
    return McEstimate{mean, std::sqrt(var / samples)};
}

McEstimate mc_solution_norm(const SpaceTimeField& g, const LevyMeasureSpec& nu, double k,
                            double p, bool homogeneous, int samples, std::uint64_t seed,
                            const SemigroupKind& kind, int workers) {
    return mc_solution_norm_in(g, nu,
                               SolutionNorm{SolutionNorm::Family::Sobolev, k, p, homogeneous},
                               samples, seed, kind, workers);
}

} // namespace levyheat

// Acceptance gate: one check per criterion, each printing a PASS/FAIL line.
//
//   ./acceptance            runs all ten criteria
//   ./acceptance --only N   runs a single criterion
//   ./acceptance --list     lists them
//
// Exit code is the number of failed criteria.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "levyheat/config.hpp"
#include "levyheat/inequalities.hpp"
#include "levyheat/recipes.hpp"

using namespace levyheat;
namespace fs = std::filesystem;

namespace {

struct Detail {
    std::vector<std::string> lines;
    bool ok = true;

    void expect(bool cond, const std::string& line) {
        ok = ok && cond;
        lines.push_back(std::string(cond ? "  ok   " : "  BAD  ") + line);
    }
    void note(const std::string& line) { lines.push_back("       " + line); }
};

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

bool within_2x(double a, double b) {
    if (a == 0.0 && b == 0.0) return true;
    return a > 0.0 && b > 0.0 && a <= 2.0 * b && b <= 2.0 * a;
}

// ---------------------------------------------------------------- criterion 1
void criterion_partition(Detail& d) {
    for (const GridSpec& g : {GridSpec::make(1, 256, 1.0), GridSpec::make(1, 4096, 1.0),
                              GridSpec::make(2, 64, 1.0)}) {
        const RatioReport rep = check_partition(g);
        const double low = rep.fitted_constants.at("max_dev_nonhomogeneous");
        const double hom = rep.fitted_constants.at("max_dev_homogeneous");
        d.expect(low <= 1e-12 && hom <= 1e-12,
                 fmt("d=%d n=%d: partition deviations %.2e (full), %.2e (dyadic-only)",
                     g.dim, g.n, low, hom));
    }
}

// ---------------------------------------------------------------- criterion 2
void criterion_spectral_exactness(Detail& d) {
    const GridSpec g = GridSpec::make(1, 256, 2.0);

    double worst_mode = 0.0;
    for (int k0 : {1, 5, 17})
        for (double t : {0.01, 0.3}) {
            const Field out = heat_semigroup(make_single_mode(g, {k0, 0}), t);
            const double xi = k0 / g.period;
            const double want = std::exp(-4.0 * kPi * kPi * xi * xi * t);
            worst_mode = std::max(
                worst_mode, rel_diff(std::abs(out[g.flat_index({k0, 0})]), want));
        }
    d.expect(worst_mode <= 1e-12,
             fmt("single-mode heat amplitudes match the symbol: worst %.2e", worst_mode));

    double worst_pl = 0.0;
    for (int dim : {1, 2}) {
        const GridSpec gp = GridSpec::make(dim, dim == 1 ? 1024 : 64, 2.0);
        const Field f = make_random_decay(gp, 0.7, 2024 + dim, false);
        const Field hat = to_fourier(f);
        double sum = 0.0;
        for (std::size_t i = 0; i < hat.size(); ++i) sum += std::norm(hat[i]);
        const double spectral = std::sqrt(std::pow(gp.period, gp.dim) * sum);
        worst_pl = std::max(worst_pl, rel_diff(lp_norm(f, 2.0), spectral));
    }
    d.expect(worst_pl <= 1e-10, fmt("Plancherel identity at p=2: worst %.2e", worst_pl));

    const GridSpec gb = GridSpec::make(1, 256, 1.0);
    const Field f = make_random_decay(gb, 1.0, 7, false);
    double worst_iso = 0.0;
    for (double k : {0.0, 1.0, 1.5})
        for (double s : {-1.0, 0.5, 2.0})
            for (double p : {2.0, 3.0})
                worst_iso = std::max(
                    worst_iso, rel_diff(sobolev_norm(bessel_potential(f, s), k - s, p, false),
                                        sobolev_norm(f, k, p, false)));
    d.expect(worst_iso <= 1e-10,
             fmt("Bessel isomorphism identity on Sobolev norms: worst %.2e", worst_iso));
}

// ------------------------------------------------------------- criteria 3 & 9
void kernel_decay_gate(Detail& d, const SemigroupKind& kind) {
    const GridSpec g = GridSpec::make(1, 4096, 32.0);
    const std::vector<int> blocks{2, 3, 4};
    const std::vector<double> thetas{0.25, 0.5, 0.75, 1.0, 2.0, 3.0, 4.0,
                                     5.0,  6.0, 7.0,  8.0, 9.0, 10.0};
    const RatioReport rep = check_kernel_decay(g, blocks, thetas, kind);
    const double spread = rep.fitted_constants.at("collapse_spread");
    const double r2 = rep.fitted_constants.at("r_squared");
    d.expect(spread <= 0.05, fmt("%s: scaling collapse spread %.3f%% (<= 5%%)",
                                 kind.label().c_str(), 100.0 * spread));
    d.expect(r2 >= 0.99, fmt("%s: exponential fit R^2 = %.5f on scaled time [1,10]",
                             kind.label().c_str(), r2));
    d.note(fmt("%s: fitted decay C = %.3g, c = %.3f", kind.label().c_str(),
               rep.fitted_constants.at("C"), rep.fitted_constants.at("c")));
}

void criterion_kernel_decay(Detail& d) { kernel_decay_gate(d, SemigroupKind::heat()); }

// ---------------------------------------------------------------- criterion 4
void criterion_block_envelope(Detail& d) {
    const GridSpec g = GridSpec::make(1, 512, 1.0);
    const std::vector<int> blocks{2, 3, 4};
    const std::vector<double> thetas{0.0, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
    const std::vector<double> ps{2.0, 4.0};
    const RatioReport rep =
        check_block_decay(g, blocks, thetas, ps, 20, 1001, SemigroupKind::heat());
    const double c_single = rep.fitted_constants.at("c_single_mode");
    const double c_exact = 4.0 * kPi * kPi;
    d.expect(std::abs(c_single - c_exact) <= 0.05 * c_exact,
             fmt("single-mode fitted rate %.4f vs 4 pi^2 = %.4f (within 5%%)",
                 c_single, c_exact));
    d.expect(rep.pass, "all random-field trials lie under the fitted envelope");
    d.note(fmt("envelopes: p=2 (C=%.3g, c=%.3f), p=4 (C=%.3g, c=%.3f)",
               rep.fitted_constants.at("C_env_p2"), rep.fitted_constants.at("c_env_p2"),
               rep.fitted_constants.at("C_env_p4"), rep.fitted_constants.at("c_env_p4")));
}

// ---------------------------------------------------------------- criterion 5
void criterion_hardy(Detail& d) {
    // Closed-form single-block oracle at 10^4 steps.
    const std::vector<int> one{1};
    const std::vector<std::vector<double>> unit{std::vector<double>(10000, 1.0)};
    const HardyQuadrature q = hardy_quadrature(2.0, one, unit, 1.0, 10000);
    const double want = (7.0 + std::exp(-8.0)) / 16.0;
    d.expect(std::abs(q.ratio - want) <= 1e-4,
             fmt("unit-block oracle: quadrature %.7f vs closed form %.7f (|diff| %.2e)",
                 q.ratio, want, std::abs(q.ratio - want)));

    for (double p : {2.0, 3.0, 4.0})
        for (IndexMode mode : {IndexMode::NonNegative, IndexMode::AllIntegers}) {
            const char* mode_name = mode == IndexMode::NonNegative ? "nonneg" : "all";
            const RatioReport base = check_hardy(p, 4, 1.0, 1000, 200, mode, 505);
            const double m_base = base.fitted_constants.at("max_ratio");
            const double m_fine = base.fitted_constants.at("max_ratio_refined");
            d.expect(within_2x(m_base, m_fine),
                     fmt("p=%g %s: max ratio %.4f vs %.4f under step doubling", p,
                         mode_name, m_base, m_fine));
            // Non-divergence under index growth: extra blocks may only add
            // ballast to the right side, so the max ratio must not grow
            // beyond 2x (it may drop freely).
            const RatioReport wide = check_hardy(p, 8, 1.0, 1000, 200, mode, 505);
            const double m_wide = wide.fitted_constants.at("max_ratio");
            d.expect(m_wide <= 2.0 * m_base,
                     fmt("p=%g %s: max ratio %.4f -> %.4f under j_count 4 -> 8 "
                         "(no divergence)",
                         p, mode_name, m_base, m_wide));
        }
}

// ------------------------------------------------------------- criteria 6 & 9
void prop1_gate(Detail& d, const SemigroupKind& kind, double horizon) {
    const double p = 2.0;
    const GridSpec g = GridSpec::make(1, 128, 1.0);
    const TimeGrid tg = TimeGrid::make(horizon, 1024);

    std::vector<double> ratios;
    for (int j0 : {3, 4, 5}) {
        const SpaceTimeField f =
            make_constant_in_time(tg, make_single_mode(g, {1 << j0, 0}));
        const double lhs = prop1_lhs(f, p, kind);

        double brute = 0.0;
        const double dt = tg.dt();
        for (int n = 0; n < tg.steps; ++n) {
            double inner = 0.0;
            for (int m = 0; m < n; ++m)
                inner += dt * std::pow(lp_norm(evolve(f, n, m, kind), p), p);
            brute += dt * inner;
        }
        d.expect(lhs == brute,
                 fmt("%s j0=%d: operation equals the brute-force double sum exactly",
                     kind.label().c_str(), j0));

        const double a = kind.rate(std::exp2(j0));
        const double q = std::exp(-p * a * dt);
        const double closed =
            dt * dt * q / (1.0 - q) *
            (tg.steps - (1.0 - std::pow(q, tg.steps)) / (1.0 - q));
        d.expect(rel_diff(lhs, closed) <= 1e-10,
                 fmt("%s j0=%d: closed form agrees to %.2e", kind.label().c_str(), j0,
                     rel_diff(lhs, closed)));

        const double alpha_eff =
            kind.family == SemigroupKind::Family::Heat ? 1.0 : kind.alpha;
        const double rhs = besov_time_integral(f, -2.0 * alpha_eff / p, p, false);
        ratios.push_back(lhs / rhs);
    }
    bool comparable = true;
    for (double r : ratios) comparable = comparable && within_2x(r, ratios[0]);
    d.expect(comparable, fmt("%s: single-mode ratios %.4g / %.4g / %.4g agree within 2x",
                             kind.label().c_str(), ratios[0], ratios[1], ratios[2]));

    // Smooth random source under spatial refinement.
    const GridSpec gs = GridSpec::make(1, 128, 4.0);
    const TimeGrid ts = TimeGrid::make(0.5, 64);
    const Field base = make_random_decay(gs, 2.0, 4242, false);
    const double alpha_eff =
        kind.family == SemigroupKind::Family::Heat ? 1.0 : kind.alpha;
    std::vector<double> rr;
    for (int n : {128, 256, 512}) {
        const SpaceTimeField f = make_constant_in_time(ts, resample(base, n));
        rr.push_back(prop1_lhs(f, p, kind) /
                     besov_time_integral(f, -2.0 * alpha_eff / p, p, false));
    }
    d.expect(within_2x(rr[0], rr[1]) && within_2x(rr[1], rr[2]) && within_2x(rr[0], rr[2]),
             fmt("%s: random-source ratios %.4g / %.4g / %.4g stable across n = 128/256/512",
                 kind.label().c_str(), rr[0], rr[1], rr[2]));
}

void criterion_prop1(Detail& d) { prop1_gate(d, SemigroupKind::heat(), 0.005); }

// ---------------------------------------------------------------- criterion 7
void criterion_isometry(Detail& d) {
    const GridSpec g = GridSpec::make(1, 16, 16.0);
    const TimeGrid tg = TimeGrid::make(1.0, 32);
    const SpaceTimeField f = make_constant_in_time(tg, make_single_mode(g, {1, 0}));
    const SemigroupKind heat = SemigroupKind::heat();

    struct Case {
        const char* name;
        LevyMeasureSpec nu;
    };
    const Case cases[] = {
        {"symmetric +-1 atoms", LevyMeasureSpec::atoms({{1.0, 1.0}, {-1.0, 1.0}})},
        {"single unit atom", LevyMeasureSpec::atoms({{1.0, 1.0}})},
    };
    for (const Case& c : cases) {
        const RatioReport rep = check_isometry(f, c.nu, 10000, 90210, heat, 4);
        const double gap = std::abs(rep.lhs - rep.rhs);
        d.expect(rep.pass, fmt("%s: MC %.6g vs beta_2 x quadrature %.6g, |gap| %.2g <= "
                               "4 x stderr %.2g",
                               c.name, rep.lhs, rep.rhs, gap, 4.0 * *rep.mc_error));
    }
}

// ---------------------------------------------------------------- criterion 8
void criterion_theorem(Detail& d) {
    const GridSpec g = GridSpec::make(1, 32, 8.0);
    const TimeGrid tg = TimeGrid::make(1.0, 64);
    const SpaceTimeField f = make_constant_in_time(tg, make_random_decay(g, 2.0, 88, false));
    const LevyMeasureSpec nu = LevyMeasureSpec::atoms({{1.0, 1.0}, {-1.0, 1.0}});
    const SemigroupKind heat = SemigroupKind::heat();
    const double p = 4.0;

    for (double k : {0.0, 1.0}) {
        const RatioReport small = check_theorem(f, nu, k, p, false, 1000, 314, heat, 4);
        const RatioReport big = check_theorem(f, nu, k, p, false, 4000, 314, heat, 4);
        d.expect(std::isfinite(small.ratio) && small.ratio > 0.0,
                 fmt("k=%g: ratio %.5g finite", k, small.ratio));
        d.expect(within_2x(small.ratio, big.ratio),
                 fmt("k=%g: ratio stable under 4x samples: %.5g vs %.5g", k, small.ratio,
                     big.ratio));
    }

    // Smoothness reduction: applying (I - Lap)^{k/2} to the source and
    // dropping k to 0 reproduces the Monte Carlo side exactly (the operators
    // commute mode by mode); the Besov side moves between equivalent norms.
    const double k = 1.0;
    const RatioReport direct = check_theorem(f, nu, k, p, false, 1000, 314, heat, 4);
    const RatioReport reduced =
        check_theorem(bessel_framewise(f, k), nu, 0.0, p, false, 1000, 314, heat, 4);
    d.expect(rel_diff(direct.lhs, reduced.lhs) <= 1e-10,
             fmt("k-reduction identity on the solution norm: rel diff %.2e",
                 rel_diff(direct.lhs, reduced.lhs)));
    d.note(fmt("source-side Besov norms shift by the equivalence factor %.4g",
               reduced.rhs / direct.rhs));
}

// ---------------------------------------------------------------- criterion 9
void criterion_fractional(Detail& d) {
    for (double alpha : {0.5, 0.75}) {
        const SemigroupKind kind = SemigroupKind::fractional(alpha);
        kernel_decay_gate(d, kind);
        // Saturation of the single-block comparison needs p a(2^j) T >> 1,
        // which the slower fractional decay reaches at T = 0.1.
        prop1_gate(d, kind, 0.1);
    }
}

// --------------------------------------------------------------- criterion 10
void criterion_determinism(Detail& d) {
    nlohmann::json doc{
        {"schema_version", 1},
        {"seed", 31337},
        {"grid", {{"dim", 1}, {"n", 16}, {"period", 8.0}}},
        {"time", {{"horizon", 1.0}, {"steps", 16}}},
        {"levy", {{"atoms", {{{"size", 1.0}, {"rate", 1.0}}, {{"size", -1.0}, {"rate", 1.0}}}}}},
        {"field", {{"recipe", "random_decay"}, {"slope", 2.0}, {"field_seed", 5}}},
        {"check", {{"kind", "theorem"}, {"p", {2.0, 4.0}}, {"k", {0.0}}, {"samples", 50}}}};
    const ExperimentConfig cfg = parse_config(doc);

    auto run_into = [&cfg](const char* name) {
        const fs::path dir = fs::temp_directory_path() / name;
        fs::remove_all(dir);
        run_experiment(cfg, dir, 3);
        std::ifstream in(dir / "results.jsonl");
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = run_into("levyheat_accept_det_a");
    const std::string b = run_into("levyheat_accept_det_b");
    d.expect(!a.empty() && a == b,
             fmt("two runs of (config, seed) produce byte-identical records (%zu bytes)",
                 a.size()));

    // The acceptance harness itself is seeded the same way: re-running the
    // isometry criterion's first Monte Carlo estimate must reproduce bits.
    const GridSpec g = GridSpec::make(1, 16, 16.0);
    const TimeGrid tg = TimeGrid::make(1.0, 16);
    const SpaceTimeField f = make_constant_in_time(tg, make_single_mode(g, {1, 0}));
    const LevyMeasureSpec nu = LevyMeasureSpec::atoms({{1.0, 1.0}, {-1.0, 1.0}});
    const McEstimate e1 = mc_solution_norm(f, nu, 0.0, 2.0, false, 500, 99, SemigroupKind::heat(), 1);
    const McEstimate e2 = mc_solution_norm(f, nu, 0.0, 2.0, false, 500, 99, SemigroupKind::heat(), 4);
    d.expect(e1.value == e2.value && e1.std_error == e2.std_error,
             "Monte Carlo estimates are bit-identical across worker counts");
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Detail&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "partition of unity on the resolved lattice", criterion_partition},
        {2, "spectral exactness (symbols, Plancherel, isomorphism)",
         criterion_spectral_exactness},
        {3, "dyadic kernel decay and scaling collapse", criterion_kernel_decay},
        {4, "block semigroup decay envelope", criterion_block_envelope},
        {5, "Hardy-type inequality quadrature", criterion_hardy},
        {6, "deterministic convolution bound", criterion_prop1},
        {7, "p = 2 isometry anchor", criterion_isometry},
        {8, "a-priori bound at p = 4 with smoothness reduction", criterion_theorem},
        {9, "fractional-semigroup variants", criterion_fractional},
        {10, "bit-reproducibility from (config, seed)", criterion_determinism},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const Criterion& c : criteria())
                std::printf("%2d  %s\n", c.id, c.title);
            return 0;
        } else {
            std::fprintf(stderr, "usage: %s [--only N] [--list]\n", argv[0]);
            return 64;
        }
    }

    int failed = 0;
    for (const Criterion& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        Detail d;
        try {
            c.run(d);
        } catch (const std::exception& e) {
            d.expect(false, std::string("exception: ") + e.what());
        }
        std::printf("[%s] criterion %d: %s\n", d.ok ? "PASS" : "FAIL", c.id, c.title);
        for (const std::string& line : d.lines) std::printf("%s\n", line.c_str());
        std::fflush(stdout);
        if (!d.ok) ++failed;
    }
    return failed;
}

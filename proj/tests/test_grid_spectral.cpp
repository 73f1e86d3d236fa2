#include <doctest.h>

#include <cmath>

#include "levyheat/grid.hpp"
#include "levyheat/multiplier.hpp"
#include "levyheat/recipes.hpp"
#include "test_util.hpp"

using namespace levyheat;
using testutil::max_abs_diff;
using testutil::max_rel_diff;
using testutil::random_complex_field;
using testutil::rel_diff;

TEST_SUITE("grid_spectral") {

TEST_CASE("grid spec validates its invariants") {
    CHECK_THROWS_AS(GridSpec::make(3, 64, 1.0), contract_error);
    CHECK_THROWS_AS(GridSpec::make(1, 100, 1.0), contract_error);
    CHECK_THROWS_AS(GridSpec::make(1, 4, 1.0), contract_error);
    CHECK_THROWS_AS(GridSpec::make(1, 64, 0.0), contract_error);
    const GridSpec g = GridSpec::make(2, 16, 2.0);
    CHECK(g.point_count() == 256);
    CHECK(g.signed_index(0) == 0);
    CHECK(g.signed_index(8) == -8);
    CHECK(g.signed_index(15) == -1);
    CHECK(g.frequency_norm(g.flat_index({3, -4})) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("constant field transforms to a pure zero mode") {
    const GridSpec g = GridSpec::make(1, 64, 1.0);
    Field f(g, Rep::Physical, std::vector<cplx>(64, cplx(1.0, 0.0)));
    const Field hat = forward_transform(f);
    CHECK(std::abs(hat[0] - cplx(1.0, 0.0)) < 1e-14);
    for (std::size_t i = 1; i < hat.size(); ++i) CHECK(std::abs(hat[i]) < 1e-14);
}

TEST_CASE("discrete exponentials are orthonormal under the transform") {
    const GridSpec g = GridSpec::make(1, 32, 1.0);
    const int k0 = 5;
    Field f = Field::zero(g, Rep::Physical);
    for (int m = 0; m < g.n; ++m)
        f.mutable_values()[m] = std::exp(cplx(0.0, 2.0 * kPi * k0 * m / g.n));
    const Field hat = forward_transform(f);
    for (std::size_t i = 0; i < hat.size(); ++i) {
        const cplx want = g.signed_indices(i)[0] == k0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        CHECK(std::abs(hat[i] - want) < 1e-13);
    }
}

TEST_CASE("forward then inverse recovers a random field to 1e-12") {
    for (int dim : {1, 2}) {
        const GridSpec g = GridSpec::make(dim, dim == 1 ? 128 : 32, 1.5);
        const Field f = random_complex_field(g, 11);
        const Field back = inverse_transform(forward_transform(f));
        CHECK(max_rel_diff(f, back) < 1e-12);
    }
}

TEST_CASE("inverse of a single coefficient is the matching exponential") {
    const GridSpec g = GridSpec::make(1, 16, 1.0);
    const int k0 = -3;
    const Field phys = inverse_transform(make_single_mode(g, {k0, 0}));
    for (int m = 0; m < g.n; ++m) {
        const cplx want = std::exp(cplx(0.0, 2.0 * kPi * k0 * m / g.n));
        CHECK(std::abs(phys[static_cast<std::size_t>(m)] - want) < 1e-13);
    }
}

TEST_CASE("zero coefficients give the zero field") {
    const GridSpec g = GridSpec::make(2, 8, 1.0);
    const Field phys = inverse_transform(Field::zero(g, Rep::Fourier));
    for (std::size_t i = 0; i < phys.size(); ++i) CHECK(phys[i] == cplx(0.0, 0.0));
}

TEST_CASE("conjugate-symmetric coefficients produce a real field") {
    const GridSpec g = GridSpec::make(1, 64, 1.0);
    const Field f = make_random_decay(g, 1.0, 21, false);
    const Field phys = to_physical(f);
    double imag = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < phys.size(); ++i) {
        imag = std::max(imag, std::abs(phys[i].imag()));
        mag = std::max(mag, std::abs(phys[i]));
    }
    CHECK(imag < 1e-12 * mag);
}

TEST_CASE("representation preconditions are enforced") {
    const GridSpec g = GridSpec::make(1, 8, 1.0);
    CHECK_THROWS_AS(forward_transform(Field::zero(g, Rep::Fourier)), contract_error);
    CHECK_THROWS_AS(inverse_transform(Field::zero(g, Rep::Physical)), contract_error);
}

TEST_CASE("identity multiplier leaves fields unchanged") {
    const GridSpec g = GridSpec::make(1, 32, 1.0);
    const Field four = random_complex_field(g, 3, Rep::Fourier);
    CHECK(max_abs_diff(four, apply_multiplier(four, Multiplier::identity())) == 0.0);
    // Physical callers pay one transform round trip.
    const Field phys = random_complex_field(g, 3);
    CHECK(max_rel_diff(phys, apply_multiplier(phys, Multiplier::identity())) < 1e-12);
}

TEST_CASE("multiplier acts diagonally on single modes") {
    const GridSpec g = GridSpec::make(1, 64, 2.0);
    const int k0 = 7;
    const double t = 0.3;
    const Field out = heat_semigroup(make_single_mode(g, {k0, 0}), t);
    const double xi = k0 / g.period;
    const double want = std::exp(-4.0 * kPi * kPi * xi * xi * t);
    CHECK(rel_diff(std::abs(out[g.flat_index({k0, 0})]), want) < 1e-12);
}

TEST_CASE("composing multipliers equals applying the product symbol") {
    const GridSpec g = GridSpec::make(1, 64, 1.0);
    const Field f = random_complex_field(g, 5);
    const Multiplier m1 = Multiplier::radial("m1", [](double r) { return cplx(1.0 / (1.0 + r), 0.5); });
    const Multiplier m2 = Multiplier::radial("m2", [](double r) { return cplx(std::cos(r), -0.25); });
    const Multiplier prod{"m1*m2", [&](double x, double y) { return m1.symbol(x, y) * m2.symbol(x, y); }};
    const Field a = apply_multiplier(apply_multiplier(f, m1), m2);
    const Field b = apply_multiplier(f, prod);
    CHECK(max_rel_diff(a, b) < 1e-12);
    // Diagonal action makes the composition order irrelevant.
    const Field c = apply_multiplier(apply_multiplier(f, m2), m1);
    CHECK(max_rel_diff(a, c) < 1e-12);
}

TEST_CASE("singular symbols are rejected") {
    const GridSpec g = GridSpec::make(1, 8, 1.0);
    const Field f = random_complex_field(g, 9);
    const Multiplier bad = Multiplier::radial("1/r", [](double r) { return cplx(1.0 / r, 0.0); });
    CHECK_THROWS_AS(apply_multiplier(f, bad), singularity_error);
}

TEST_CASE("heat semigroup identity, decay, and mass conservation") {
    const GridSpec g = GridSpec::make(1, 64, 1.0);
    const Field f = random_complex_field(g, 17);
    SUBCASE("t = 0 is the exact identity") {
        const Field same = heat_semigroup(f, 0.0);
        CHECK(max_abs_diff(f, same) == 0.0);
    }
    SUBCASE("constant fields are invariant") {
        const Field c = make_constant(g, {2.0, -1.0});
        CHECK(max_rel_diff(c, heat_semigroup(c, 0.7)) < 1e-15);
    }
    SUBCASE("negative times are rejected") {
        CHECK_THROWS_AS(heat_semigroup(f, -1e-9), contract_error);
    }
}

TEST_CASE("heat semigroup satisfies the composition law to 1e-12") {
    const GridSpec g = GridSpec::make(1, 128, 1.0);
    const Field f = random_complex_field(g, 23);
    for (double t : {0.01, 0.1, 1.0})
        for (double s : {0.01, 0.1, 1.0}) {
            const Field two = heat_semigroup(heat_semigroup(f, t), s);
            const Field one = heat_semigroup(f, t + s);
            CHECK(max_rel_diff(two, one) < 1e-12);
        }
}

TEST_CASE("heat semigroup contracts every tested L^p norm") {
    const GridSpec g = GridSpec::make(1, 128, 1.0);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const Field f = make_random_decay(g, 0.5, seed, false);
        for (double p : {1.0, 2.0, 4.0})
            for (double t : {0.01, 0.1, 1.0})
                CHECK(lp_norm(heat_semigroup(f, t), p) <=
                      lp_norm(f, p) * (1.0 + 1e-10));
    }
}

TEST_CASE("fractional semigroup matches its symbol and the alpha -> 1 limit") {
    const GridSpec g = GridSpec::make(1, 64, 1.0);
    const int k0 = 9;
    const Field mode = make_single_mode(g, {k0, 0});
    SUBCASE("t = 0 identity") {
        CHECK(max_abs_diff(mode, fractional_semigroup(mode, 0.0, 0.5)) == 0.0);
    }
    SUBCASE("single-mode amplitude is the exact symbol") {
        const double t = 0.05, alpha = 0.6;
        const Field out = fractional_semigroup(mode, t, alpha);
        const double want = std::exp(-t * std::pow(2.0 * kPi * k0, 2.0 * alpha));
        CHECK(rel_diff(std::abs(out[g.flat_index({k0, 0})]), want) < 1e-12);
    }
    SUBCASE("alpha near 1 reproduces the heat symbol to 1e-10") {
        // Symbol gap is ~ 2e-8 * t * (2 pi |xi|)^2 * log(2 pi |xi|); keep the
        // exponent small so the comparison probes the limit, not the decay.
        const double t = 1e-5;
        const Field low = make_single_mode(g, {1, 0});
        const Field frac = fractional_semigroup(low, t, 1.0 - 1e-8);
        const Field heat = heat_semigroup(low, t);
        CHECK(max_rel_diff(frac, heat) < 1e-10);
    }
    SUBCASE("alpha outside (0,1) is rejected") {
        CHECK_THROWS_AS(fractional_semigroup(mode, 0.1, 0.0), contract_error);
        CHECK_THROWS_AS(fractional_semigroup(mode, 0.1, 1.0), contract_error);
    }
}

TEST_CASE("bessel potential examples and inverse") {
    const GridSpec g = GridSpec::make(1, 64, 1.0);
    const Field f = random_complex_field(g, 31);
    CHECK(max_abs_diff(f, bessel_potential(f, 0.0)) == 0.0);
    const Field c = make_constant(g, {1.0, 0.0});
    CHECK(max_rel_diff(c, bessel_potential(c, 3.5)) < 1e-15);

    const int k0 = 6;
    const Field mode = make_single_mode(g, {k0, 0});
    const Field out = bessel_potential(mode, 2.0);
    CHECK(rel_diff(std::abs(out[g.flat_index({k0, 0})]), 1.0 + 4.0 * kPi * kPi * k0 * k0) <
          1e-12);

    const Field round = bessel_potential(bessel_potential(f, 1.7), -1.7);
    CHECK(max_rel_diff(f, round) < 1e-10);
}

TEST_CASE("riesz potential conventions on the zero mode") {
    const GridSpec g = GridSpec::make(1, 64, 1.0);
    const Field mean_zero = make_random_decay(g, 1.0, 37, true);
    CHECK(max_abs_diff(mean_zero, riesz_potential(mean_zero, 0.0)) == 0.0);

    const int k0 = 4;
    const Field mode = make_single_mode(g, {k0, 0});
    const Field out = riesz_potential(mode, 1.0);
    CHECK(rel_diff(std::abs(out[g.flat_index({k0, 0})]), 2.0 * kPi * k0) < 1e-12);

    const Field round = riesz_potential(riesz_potential(mean_zero, 1.3), -1.3);
    CHECK(max_rel_diff(mean_zero, round) < 1e-10);

    const Field biased = make_constant(g, {1.0, 0.0});
    CHECK_THROWS_AS(riesz_potential(biased, -1.0), singularity_error);
}

TEST_CASE("lp_norm closed forms") {
    const GridSpec g = GridSpec::make(1, 64, 1.0);
    SUBCASE("unit constant has unit norm for every p") {
        Field ones(g, Rep::Physical, std::vector<cplx>(64, cplx(1.0, 0.0)));
        for (double p : {1.0, 2.0, 3.0, 4.5}) CHECK(rel_diff(lp_norm(ones, p), 1.0) < 1e-12);
    }
    SUBCASE("unimodular single modes have unit norm for every p") {
        const Field mode = make_single_mode(g, {5, 0});
        for (double p : {1.0, 2.0, 3.0, 4.5}) CHECK(rel_diff(lp_norm(mode, p), 1.0) < 1e-12);
    }
    SUBCASE("p < 1 is rejected") {
        CHECK_THROWS_AS(lp_norm(make_single_mode(g, {1, 0}), 0.5), contract_error);
    }
}

TEST_CASE("Plancherel identity holds to 1e-10") {
    for (int dim : {1, 2}) {
        const GridSpec g = GridSpec::make(dim, dim == 1 ? 256 : 16, 2.0);
        const Field f = random_complex_field(g, 41);
        const Field hat = forward_transform(f);
        double sum = 0.0;
        for (std::size_t i = 0; i < hat.size(); ++i) sum += std::norm(hat[i]);
        const double spectral = std::sqrt(std::pow(g.period, g.dim) * sum);
        CHECK(rel_diff(lp_norm(f, 2.0), spectral) < 1e-10);
    }
}

TEST_CASE("spectral resampling preserves band-limited content") {
    const GridSpec g = GridSpec::make(1, 32, 1.0);
    const Field f = make_random_decay(g, 1.0, 53, false);
    const Field fine = resample(f, 128);
    CHECK(fine.grid().n == 128);
    // Norms of band-limited fields are grid-independent at p = 2.
    CHECK(rel_diff(lp_norm(f, 2.0), lp_norm(fine, 2.0)) < 1e-12);
}

} // TEST_SUITE

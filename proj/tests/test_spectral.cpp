#include <doctest.h>

#include "nlse/errors.hpp"
#include "nlse/spectral.hpp"
#include "oracles.hpp"

using namespace nlse;
using oracle::I;

namespace {

const PeriodicGrid kOmega(-16.0, 16.0, 256);

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("dft of a constant field") {
    const PeriodicGrid g(0.0, 1.0, 4);
    const SpectralField c = dft(GridField(g, {1, 1, 1, 1, 1}));
    CHECK(std::abs(c.at(0) - 1.0) < 1e-15);
    for (long l : {-2, -1, 1}) CHECK(std::abs(c.at(l)) < 1e-15);
}

TEST_CASE("dft of a pure mode") {
    for (long n : {4, 8, 64}) {
        const PeriodicGrid g(-1.0, 2.0, n);
        const SpectralField c = dft(GridField::sample(g, [&](double x) { return std::exp(I * g.mu(1) * (x - g.a())); }));
        for (long l = g.lmin(); l <= g.lmax(); ++l) CHECK(std::abs(c.at(l) - (l == 1 ? 1.0 : 0.0)) < 1e-14);
    }
}

TEST_CASE("dft and idft against the direct sums") {
    std::mt19937_64 rng(7);
    for (long n : {8, 64}) {
        const PeriodicGrid g(-16.0, 16.0, n);
        const auto v = oracle::random_values(static_cast<std::size_t>(n), rng);
        const SpectralField c = dft(GridField(g, v));
        const auto ref = oracle::dft(g, v);
        double err = 0.0;
        for (long l = g.lmin(); l <= g.lmax(); ++l)
            err = std::max(err, std::abs(c.at(l) - ref[static_cast<std::size_t>(l - g.lmin())]));
        CHECK(err < 1e-12);

        const GridField back = idft(c);
        double vmax = 0.0, rt = 0.0;
        for (long j = 0; j < n; ++j) {
            vmax = std::max(vmax, std::abs(v[static_cast<std::size_t>(j)]));
            rt = std::max(rt, std::abs(back[j] - v[static_cast<std::size_t>(j)]));
            CHECK(std::abs(back[j] - oracle::eval(c, g.node(j))) < 1e-12);
        }
        CHECK(rt / vmax < 1e-12);
        CHECK(back[n] == back[0]);
    }
}

TEST_CASE("idft of simple fields") {
    const PeriodicGrid g(0.0, 3.0, 8);
    const GridField zero = idft(SpectralField(g));
    for (auto z : zero.values()) CHECK(z == cplx(0.0));
    SpectralField c(g);
    c.at(0) = {3.0, 4.0};
    const GridField k = idft(c);
    CHECK(k.values().size() == 9);
    for (auto z : k.values()) CHECK(std::abs(z - cplx(3.0, 4.0)) < 1e-15);
}

TEST_CASE("grid field endpoint convention") {
    const PeriodicGrid g(0.0, 1.0, 4);
    CHECK_THROWS_AS(GridField(g, {1, 2, 3, 4, 5}), ConfigError);
    CHECK_THROWS_AS(GridField(g, {1, 2, 3}), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid(0.0, 1.0, 6 - 1), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid(0.0, 1.0, 2), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid(1.0, 1.0, 4), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid::from_mesh_size(-16.0, 16.0, 0.3), ConfigError);
    CHECK(PeriodicGrid::from_mesh_size(-16.0, 16.0, 1.0 / 128).modes() == 4096);
}

TEST_CASE("evaluate") {
    SpectralField one(kOmega);
    one.at(0) = 1.0;
    CHECK(std::abs(evaluate(one, 0.0) - 1.0) < 1e-14);
    const auto mode = SpectralField::pure_mode(kOmega, 1);
    CHECK(std::abs(evaluate(mode, kOmega.a()) - 1.0) < 1e-14);
    CHECK(std::abs(evaluate(mode, 0.0) + 1.0) < 1e-14);
    CHECK_THROWS_AS(evaluate(mode, 16.5), DomainError);
    CHECK_THROWS_AS(evaluate(mode, -17.0), DomainError);

    std::mt19937_64 rng(3);
    const auto c = oracle::random_field(PeriodicGrid(-16, 16, 32), rng);
    for (double x : {-16.0, -3.3, 0.1, 7.77, 16.0}) CHECK(std::abs(evaluate(c, x) - oracle::eval(c, x)) < 1e-11);
}

TEST_CASE("project") {
    const auto mode = [&](double x) { return std::exp(I * kOmega.mu(1) * (x - kOmega.a())); };
    const SpectralField p = project(mode, kOmega);
    for (long l = kOmega.lmin(); l <= kOmega.lmax(); ++l) CHECK(std::abs(p.at(l) - (l == 1 ? 1.0 : 0.0)) < 1e-12);

    const SpectralField z = project([](double) { return cplx(0.0); }, kOmega);
    CHECK(sobolev_norm(z, 0) == 0.0);

    CHECK_THROWS_AS(project(mode, kOmega, 3), ConfigError);
}

TEST_CASE("project of the H2 datum: oversampling differences stay below the tail") {
    const auto f = [](double x) { return cplx(oracle::type1(x)); };
    const SpectralField p16 = project(f, kOmega, 16);
    const SpectralField p32 = project(f, kOmega, 32);
    const SpectralField p64 = project(f, kOmega, 64);

    // tail beyond T_N from a 256x finer transform
    const PeriodicGrid fine = kOmega.with_modes(256 * 256);
    const SpectralField full = dft(GridField::sample(fine, f));
    double tail = 0.0;
    for (long l = fine.lmin(); l <= fine.lmax(); ++l)
        if (l < kOmega.lmin() || l > kOmega.lmax()) tail += std::norm(full.at(l));
    tail = std::sqrt(kOmega.length() * tail);

    CHECK(sobolev_norm(p16 - p32, 0) < tail);
    CHECK(sobolev_norm(p16 - p64, 0) < tail);
    CHECK(sobolev_norm(p32 - p64, 0) < tail);
    MESSAGE("tail " << tail << ", |P16 - P64| " << sobolev_norm(p16 - p64, 0));
}

TEST_CASE("sobolev norm") {
    SpectralField one(kOmega);
    one.at(0) = 1.0;
    for (double alpha : {0.0, 1.0, 1.75, 2.0}) CHECK(sobolev_norm(one, alpha) == doctest::Approx(std::sqrt(32.0)).epsilon(1e-15));
    CHECK(sobolev_norm(SpectralField(kOmega), 1.0) == 0.0);
    const auto mode = SpectralField::pure_mode(kOmega, 1);
    const double mu = std::numbers::pi / 16.0;
    CHECK(sobolev_norm(mode, 1.0) == doctest::Approx(std::sqrt(32.0 * (1.0 + mu * mu))).epsilon(1e-15));
    CHECK(sobolev_norm(mode, 1.0) == doctest::Approx(5.764869).epsilon(1e-6));
    CHECK_THROWS_AS(sobolev_norm(mode, -1.0), DomainError);

    std::mt19937_64 rng(11);
    const auto c = oracle::random_field(kOmega, rng);
    for (double alpha : {0.0, 1.0, 2.0}) CHECK(sobolev_norm(c, alpha) == doctest::Approx(oracle::norm(c, alpha)).epsilon(1e-13));
}

TEST_CASE("Parseval") {
    std::mt19937_64 rng(5);
    for (long n : {4, 16, 256}) {
        const PeriodicGrid g(-16, 16, n);
        for (int trial = 0; trial < 5; ++trial) {
            const auto c = oracle::random_field(g, rng);
            const GridField v = idft(c);
            double s = 0.0;
            for (auto z : v.periodic_values()) s += std::norm(z);
            const double lhs = std::pow(sobolev_norm(c, 0), 2);
            CHECK(std::abs(lhs - g.h() * s) <= 1e-12 * lhs);
        }
    }
}

TEST_CASE("zero_pad and truncate") {
    const PeriodicGrid g4(-16, 16, 4), g16(-16, 16, 16);
    SpectralField one(g4);
    one.at(0) = 1.0;
    const auto padded = zero_pad(one, g16);
    CHECK(padded.modes() == 16);
    CHECK(sobolev_norm(padded, 1) == sobolev_norm(one, 1));
    for (long l = g16.lmin(); l <= g16.lmax(); ++l) CHECK(padded.at(l) == (l == 0 ? cplx(1.0) : cplx(0.0)));

    const auto m = zero_pad(SpectralField::pure_mode(g4, 1), g16);
    for (long l = g16.lmin(); l <= g16.lmax(); ++l) CHECK(m.at(l) == (l == 1 ? cplx(1.0) : cplx(0.0)));

    std::mt19937_64 rng(9);
    const PeriodicGrid g32(-16, 16, 32), g128(-16, 16, 128);
    const auto c = oracle::random_field(g32, rng);
    const auto p = zero_pad(c, g128);
    const GridField coarse = idft(c), fine = idft(p);
    for (long j = 0; j < 32; ++j) {
        CHECK(std::abs(fine[4 * j] - coarse[j]) < 1e-12);
        CHECK(std::abs(evaluate(p, g32.node(j)) - coarse[j]) < 1e-12);
    }
    for (double alpha : {0.0, 1.0, 1.75, 2.0})
        CHECK(std::abs(sobolev_norm(p, alpha) - sobolev_norm(c, alpha)) <= 1e-13 * sobolev_norm(c, alpha));

    const auto back = truncate(p, g32);
    CHECK(oracle::max_diff(back, c) == 0.0);

    CHECK_THROWS_AS(zero_pad(p, g32), ConfigError);
    CHECK_THROWS_AS(zero_pad(c, PeriodicGrid(-8, 8, 64)), ConfigError);
}

TEST_CASE("extended product: identity and mode shift") {
    const PeriodicGrid g(-16, 16, 16);
    const PeriodicGrid g2 = g.with_modes(32);
    std::mt19937_64 rng(13);
    const auto psi = oracle::random_field(g, rng);
    SpectralField v_one(g2);
    v_one.at(0) = 1.0;
    CHECK(oracle::max_diff(extended_product(v_one, psi), psi) < 1e-14);

    const auto shifted = extended_product(SpectralField::pure_mode(g2, 1), SpectralField::pure_mode(g, 0));
    for (long l = g.lmin(); l <= g.lmax(); ++l) CHECK(std::abs(shifted.at(l) - (l == 1 ? 1.0 : 0.0)) < 1e-14);

    CHECK_THROWS_AS(extended_product(psi, psi), ConfigError);
}

TEST_CASE("extended product equals the truncated convolution") {
    std::mt19937_64 rng(17);
    for (long n : {4, 8, 32, 128}) {
        const PeriodicGrid g(-16, 16, n);
        for (int trial = 0; trial < 3; ++trial) {
            const auto v = oracle::random_field(g.with_modes(2 * n), rng);
            const auto psi = oracle::random_field(g, rng);
            CHECK(oracle::max_diff(extended_product(v, psi), oracle::convolution(v, psi)) < 1e-11);
        }
    }
}

}  // TEST_SUITE

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ewi/specfun.hpp"
#include "ewi/synth.hpp"

using namespace ewi;

namespace {

SourceConfiguration<2> table1_sources() {
    return SourceConfiguration<2>{{
        {{0.0, 4.0}, Mat<2>{{{4.0, 2.0}, {2.0, 3.0}}}},
        {{-3.0, -3.0}, Mat<2>{{{-3.0, 0.0}, {0.0, -4.0}}}},
        {{3.0, -3.0}, Mat<2>{{{0.0, 3.0}, {3.0, 0.0}}}},
        {{4.0, -2.0}, Mat<2>{{{3.0, 2.0}, {2.0, 0.0}}}},
    }};
}

CauchyDataset<2> small_dataset(const SourceConfiguration<2>& cfg, int nodes, int nfreq) {
    const LameParameters med{1.0, 1.0};
    return generate_cauchy_data<2>(cfg, med, build_geometry<2>(10.0, nodes),
                                   frequency_ladder(5.0, 1.2, nfreq));
}

std::string temp_path(const char* name) { return std::string("ewi_test_") + name + ".json"; }

} // namespace

TEST_CASE("geometry construction and weights") {
    const auto g4 = geometry_detail::circle(10.0, 4); // relaxed node count, detail path
    CHECK(g4.nodes[0][0] == doctest::Approx(10.0));
    CHECK(g4.nodes[1][1] == doctest::Approx(10.0));
    CHECK(g4.nodes[2][0] == doctest::Approx(-10.0));
    CHECK(g4.nodes[3][1] == doctest::Approx(-10.0));

    const auto g = build_geometry<2>(10.0, 200);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    CHECK(wsum == doctest::Approx(20.0 * M_PI).epsilon(1e-12));
    CHECK_NOTHROW(validate_geometry(g));

    const auto s = build_geometry<3>(10.0, 500);
    wsum = 0.0;
    Vec<3> centroid{};
    for (std::size_t i = 0; i < s.node_count(); ++i) {
        wsum += s.weights[i];
        centroid = centroid + s.nodes[i];
    }
    centroid = (1.0 / 500.0) * centroid;
    CHECK(wsum == doctest::Approx(400.0 * M_PI).epsilon(1e-14));
    CHECK(norm<3>(centroid) <= 0.05 * 10.0);
    CHECK_NOTHROW(validate_geometry(s));

    CHECK_THROWS_AS(build_geometry<2>(10.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_geometry<3>(0.0, 100), std::invalid_argument);
}

TEST_CASE("2D boundary quadrature is spectrally accurate") {
    // integrand e^{i k xhat.y} over the circle; exact value 2 pi R J0(kR)
    const double R = 10.0, k = 6.0;
    const Vec<2> xhat{std::cos(0.35), std::sin(0.35)};
    const double exact = 2.0 * M_PI * R * bessel_j(0, k * R);
    auto quad_err = [&](int n) {
        const auto g = geometry_detail::circle(R, n);
        cplx s = 0.0;
        for (std::size_t i = 0; i < g.node_count(); ++i)
            s += g.weights[i] * std::exp(cplx(0.0, k * dot(xhat, g.nodes[i])));
        return std::abs(s - exact);
    };
    const double e72 = quad_err(72), e144 = quad_err(144);
    CHECK(e144 <= std::max(e72 / 4.0, 1e-11));
}

TEST_CASE("frequency ladder") {
    const FrequencyLadder l = frequency_ladder(5.0, 1.2, 10);
    CHECK(l.values[2] == doctest::Approx(7.2).epsilon(1e-14));
    CHECK(l.values[9] == doctest::Approx(25.798901760).epsilon(1e-10));
    CHECK(l.values.size() == 10);
    CHECK_NOTHROW(validate_ladder(l));

    const FrequencyLadder single = frequency_ladder(5.0, 1.2, 1);
    CHECK(single.values == std::vector<double>{5.0});

    CHECK_THROWS_AS(frequency_ladder(5.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(frequency_ladder(5.0, 0.9, 10), std::invalid_argument);
    CHECK_THROWS_AS(frequency_ladder(0.0, 1.2, 10), std::invalid_argument);
    CHECK_THROWS_AS(frequency_ladder(5.0, 1.2, 0), std::invalid_argument);
}

TEST_CASE("omega* admissibility") {
    SourceConfiguration<2> two{{{{0.0, 4.0}, identity<2>()}, {{-3.0, -3.0}, identity<2>()}}};
    const OmegaStarCheck c = validate_omega_star(two, 5.0);
    CHECK(c.pass);
    CHECK(c.margin == doctest::Approx(5.0 * std::sqrt(58.0) / 2.0).epsilon(1e-12));

    SourceConfiguration<2> one{{{{1.0, 1.0}, identity<2>()}}};
    const OmegaStarCheck c1 = validate_omega_star(one, 0.1);
    CHECK(c1.pass);
    CHECK(c1.single_source);

    SourceConfiguration<2> close{{{{0.0, 0.0}, identity<2>()}, {{0.1, 0.0}, identity<2>()}}};
    const OmegaStarCheck c2 = validate_omega_star(close, 5.0);
    CHECK_FALSE(c2.pass);
    CHECK(c2.margin == doctest::Approx(0.25));
    CHECK(validate_omega_star(close, 20.0).pass);
}

TEST_CASE("cauchy data generation: determinism, linearity, p/s distinctness") {
    const auto cfg = table1_sources();
    const auto d1 = small_dataset(cfg, 16, 2);
    const auto d2 = small_dataset(cfg, 16, 2);
    CHECK(dataset_to_json(d1) == dataset_to_json(d2));
    CHECK(d1.records.size() == 4);

    SourceConfiguration<2> a{{cfg.sources[0]}};
    SourceConfiguration<2> b{{cfg.sources[1]}};
    SourceConfiguration<2> ab{{cfg.sources[0], cfg.sources[1]}};
    const auto da = small_dataset(a, 16, 2);
    const auto db = small_dataset(b, 16, 2);
    const auto dab = small_dataset(ab, 16, 2);
    double scale = 0.0;
    for (std::size_t r = 0; r < dab.records.size(); ++r)
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t c = 0; c < 2; ++c)
                scale = std::max(scale, std::abs(dab.records[r].u[i][c]));
    for (std::size_t r = 0; r < dab.records.size(); ++r)
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t c = 0; c < 2; ++c) {
                CHECK(std::abs(dab.records[r].u[i][c] -
                               (da.records[r].u[i][c] + db.records[r].u[i][c])) <= 1e-13 * scale);
                CHECK(std::abs(dab.records[r].t[i][c] -
                               (da.records[r].t[i][c] + db.records[r].t[i][c])) <= 1e-13 * scale);
            }

    // p and s records at the same rung are fields at different frequencies
    const auto* rp = d1.find(0, WaveType::P);
    const auto* rs = d1.find(0, WaveType::S);
    REQUIRE(rp != nullptr);
    REQUIRE(rs != nullptr);
    double diff = 0.0;
    for (std::size_t i = 0; i < 16; ++i) diff += norm<2>(rp->u[i] - rs->u[i]);
    CHECK(diff > 1e-6);

    SourceConfiguration<2> outside{{{{11.0, 0.0}, identity<2>()}}};
    CHECK_THROWS_AS(small_dataset(outside, 16, 1), std::invalid_argument);
}

TEST_CASE("noise model") {
    const auto ds = small_dataset(table1_sources(), 16, 2);

    const auto same = add_noise(ds, NoiseSpec{0.0, 42});
    CHECK(dataset_to_json(same).find("\"noise\":{") != std::string::npos);
    for (std::size_t r = 0; r < ds.records.size(); ++r)
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t c = 0; c < 2; ++c) {
                CHECK(same.records[r].u[i][c] == ds.records[r].u[i][c]);
                CHECK(same.records[r].t[i][c] == ds.records[r].t[i][c]);
            }

    const double eps = 0.05;
    const auto noisy = add_noise(ds, NoiseSpec{eps, 42});
    for (std::size_t r = 0; r < ds.records.size(); ++r) {
        double clean_sq = 0.0, noisy_sq = 0.0;
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t c = 0; c < 2; ++c) {
                const cplx d = noisy.records[r].u[i][c] - ds.records[r].u[i][c];
                CHECK(std::abs(d) <= eps * std::abs(ds.records[r].u[i][c]) * (1.0 + 1e-12));
                clean_sq += std::norm(ds.records[r].u[i][c]);
                noisy_sq += std::norm(noisy.records[r].u[i][c]);
            }
        CHECK(std::sqrt(noisy_sq) <= (1.0 + eps) * std::sqrt(clean_sq));
        CHECK(std::sqrt(noisy_sq) >= (1.0 - eps) * std::sqrt(clean_sq));
    }

    const auto noisy2 = add_noise(ds, NoiseSpec{eps, 42});
    CHECK(dataset_to_json(noisy) == dataset_to_json(noisy2));

    const auto other = add_noise(ds, NoiseSpec{eps, 43});
    int total = 0, changed = 0;
    for (std::size_t r = 0; r < ds.records.size(); ++r)
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t c = 0; c < 2; ++c) {
                if (std::abs(ds.records[r].u[i][c]) == 0.0) continue;
                ++total;
                if (other.records[r].u[i][c] != noisy.records[r].u[i][c]) ++changed;
            }
    CHECK(changed >= (99 * total) / 100);

    CHECK_THROWS_AS(add_noise(ds, NoiseSpec{1.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(add_noise(ds, NoiseSpec{-0.1, 1}), std::invalid_argument);
}

TEST_CASE("dataset io round trip") {
    const auto ds = add_noise(small_dataset(table1_sources(), 16, 2), NoiseSpec{0.05, 7});
    const std::string path = temp_path("roundtrip");
    write_dataset(ds, path);
    const AnyDataset back = read_dataset(path);
    REQUIRE(std::holds_alternative<CauchyDataset<2>>(back));
    const auto& rb = std::get<CauchyDataset<2>>(back);
    CHECK(dataset_to_json(rb) == dataset_to_json(ds)); // bit-exact numeric round trip
    std::remove(path.c_str());
}

TEST_CASE("dataset io schema validation") {
    const auto ds = small_dataset(table1_sources(), 16, 1);
    const std::string text = dataset_to_json(ds);

    // hand-built minimal dataset: 1 frequency, 8 nodes, dim 2
    const auto mini = small_dataset(SourceConfiguration<2>{{{{0.0, 1.0}, identity<2>()}}}, 8, 1);
    CHECK_NOTHROW(dataset_from_json(dataset_to_json(mini)));

    // missing key is named
    {
        auto broken = text;
        const auto pos = broken.find("\"ladder\"");
        REQUIRE(pos != std::string::npos);
        broken.replace(pos, 8, "\"xadder\"");
        try {
            dataset_from_json(broken);
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK(std::string(e.what()).find("ladder") != std::string::npos);
        }
    }
    // truncated file
    CHECK_THROWS_AS(dataset_from_json(text.substr(0, text.size() / 2)), SchemaError);
    // version mismatch
    {
        auto wrong = text;
        const auto pos = wrong.find("\"version\":1");
        REQUIRE(pos != std::string::npos);
        wrong.replace(pos, 11, "\"version\":2");
        CHECK_THROWS_AS(dataset_from_json(wrong), SchemaError);
    }
    CHECK_THROWS_AS(read_dataset("definitely_missing_file.json"), IoError);
}

#ifndef EWI_SYNTH_HPP
#define EWI_SYNTH_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ewi/elastic.hpp"
#include "ewi/geometry.hpp"
#include "ewi/parallel.hpp"

// Admissible frequency ladder, scaled-frequency Cauchy datasets, the
// multiplicative noise model and dataset persistence.

namespace ewi {

// W_N = { eta^{n-1} omega*, n = 1..N }
struct FrequencyLadder {
    double omega_star = 0.0;
    double eta = 0.0;
    int count = 0;
    std::vector<double> values;
};

inline FrequencyLadder frequency_ladder(double omega_star, double eta, int count) {
    if (!(omega_star > 0.0)) throw std::invalid_argument("ladder: omega_star must be > 0");
    if (!(eta > 1.0)) throw std::invalid_argument("ladder: eta must be > 1");
    if (count < 1) throw std::invalid_argument("ladder: count must be >= 1");
    FrequencyLadder l{omega_star, eta, count, {}};
    l.values.reserve(count);
    for (int n = 0; n < count; ++n) l.values.push_back(omega_star * std::pow(eta, n));
    return l;
}

inline void validate_ladder(const FrequencyLadder& l) {
    if (!(l.omega_star > 0.0)) throw std::invalid_argument("ladder.omega_star: must be > 0");
    if (!(l.eta > 1.0)) throw std::invalid_argument("ladder.eta: must be > 1");
    if (l.count < 1 || static_cast<int>(l.values.size()) != l.count)
        throw std::invalid_argument("ladder.count: must match values length and be >= 1");
    for (int n = 1; n < l.count; ++n) {
        if (!(l.values[n] > l.values[n - 1]))
            throw std::invalid_argument("ladder.values: must be strictly increasing");
        if (std::abs(l.values[n] / l.values[n - 1] - l.eta) > 1e-12)
            throw std::invalid_argument("ladder.values: ratio must equal eta");
    }
}

// omega* admissibility: omega* >= 2 / min pairwise source distance.
// A single source has no pairwise distance; any omega* > 0 is admissible.
struct OmegaStarCheck {
    bool pass = false;
    bool single_source = false;
    double min_distance = 0.0;
    double margin = 0.0; // omega* * min_dist / 2; pass iff margin >= 1
};

template <std::size_t D>
OmegaStarCheck validate_omega_star(const SourceConfiguration<D>& cfg, double omega_star) {
    OmegaStarCheck c;
    c.min_distance = min_pairwise_distance(cfg);
    if (cfg.sources.size() <= 1) {
        c.single_source = true;
        c.pass = true;
        c.margin = std::numeric_limits<double>::infinity();
        return c;
    }
    c.margin = omega_star * c.min_distance / 2.0;
    c.pass = c.margin >= 1.0;
    return c;
}

struct NoiseSpec {
    double level = 0.0;
    std::uint64_t seed = 0;
};

template <std::size_t D>
struct CauchyRecord {
    int omega_index = 0; // 0-based index into ladder.values
    WaveType alpha = WaveType::P;
    std::vector<CVec<D>> u;
    std::vector<CVec<D>> t;
};

template <std::size_t D>
struct CauchyDataset {
    MeasurementGeometry<D> geometry;
    LameParameters medium;
    FrequencyLadder ladder;
    std::vector<CauchyRecord<D>> records;
    std::optional<NoiseSpec> noise;

    const CauchyRecord<D>* find(int omega_index, WaveType alpha) const {
        for (const auto& r : records)
            if (r.omega_index == omega_index && r.alpha == alpha) return &r;
        return nullptr;
    }
};

// Evaluates the radiated field and its traction at every boundary node, for
// every ladder rung and both wave types, at the scaled frequency c_alpha w.
template <std::size_t D>
CauchyDataset<D> generate_cauchy_data(const SourceConfiguration<D>& cfg,
                                      const LameParameters& medium,
                                      const MeasurementGeometry<D>& geometry,
                                      const FrequencyLadder& ladder) {
    validate_medium(medium, static_cast<int>(D));
    validate_sources(cfg);
    for (std::size_t j = 0; j < cfg.sources.size(); ++j)
        if (!(norm<D>(cfg.sources[j].location) < geometry.radius))
            throw std::invalid_argument("sources[" + std::to_string(j) +
                                        "]: must lie strictly inside the measurement boundary");

    CauchyDataset<D> ds;
    ds.geometry = geometry;
    ds.medium = medium;
    ds.ladder = ladder;
    const WaveSpeeds c = wave_speeds(medium);
    const std::size_t nn = geometry.node_count();
    for (int n = 0; n < ladder.count; ++n) {
        for (WaveType alpha : {WaveType::P, WaveType::S}) {
            CauchyRecord<D> rec;
            rec.omega_index = n;
            rec.alpha = alpha;
            rec.u.resize(nn);
            rec.t.resize(nn);
            const double scaled = (alpha == WaveType::P ? c.c_p : c.c_s) * ladder.values[n];
            parallel_for(nn, [&](std::size_t b, std::size_t e) {
                for (std::size_t i = b; i < e; ++i) {
                    const FieldValue<D> f =
                        radiated_field<D>(cfg, medium, scaled, geometry.nodes[i], true);
                    rec.u[i] = f.u;
                    rec.t[i] = traction<D>(medium, geometry.normals[i], f.u, f.grad);
                }
            });
            ds.records.push_back(std::move(rec));
        }
    }
    return ds;
}

namespace noise_detail {

// Counter-based generator: splitmix64 finalizer over seed + counter * Weyl
// increment. Platform-independent, one draw per (seed, counter) pair.
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// uniform on [-1, 1]
inline double uniform_pm1(std::uint64_t seed, std::uint64_t counter) {
    const double u = static_cast<double>(mix(seed, counter) >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

} // namespace noise_detail

// Per scalar component tau: tau_eps = tau + level * r1 |tau| e^{i pi r2} with
// fresh independent r1, r2 uniform on [-1,1]. Draw order is record-major,
// node-major, field u before t, components in index order; two counter values
// per scalar. The input dataset is left unchanged.
template <std::size_t D>
CauchyDataset<D> add_noise(const CauchyDataset<D>& in, const NoiseSpec& spec) {
    if (spec.level < 0.0 || !(spec.level < 1.0))
        throw std::invalid_argument("noise: level must satisfy 0 <= level < 1");
    CauchyDataset<D> out = in;
    out.noise = spec;
    std::uint64_t counter = 0;
    auto perturb = [&](cplx& v) {
        const double r1 = noise_detail::uniform_pm1(spec.seed, counter++);
        const double r2 = noise_detail::uniform_pm1(spec.seed, counter++);
        v += spec.level * r1 * std::abs(v) * std::exp(cplx(0.0, M_PI * r2));
    };
    for (auto& rec : out.records) {
        for (std::size_t i = 0; i < rec.u.size(); ++i) {
            for (std::size_t tau = 0; tau < D; ++tau) perturb(rec.u[i][tau]);
            for (std::size_t tau = 0; tau < D; ++tau) perturb(rec.t[i][tau]);
        }
    }
    return out;
}

// ---- persistence (JSON; see README for the schema) ----

class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

using AnyDataset = std::variant<CauchyDataset<2>, CauchyDataset<3>>;

void write_dataset(const CauchyDataset<2>& ds, const std::string& path);
void write_dataset(const CauchyDataset<3>& ds, const std::string& path);
AnyDataset read_dataset(const std::string& path);

std::string dataset_to_json(const CauchyDataset<2>& ds);
std::string dataset_to_json(const CauchyDataset<3>& ds);
AnyDataset dataset_from_json(const std::string& text);

} // namespace ewi

#endif // EWI_SYNTH_HPP

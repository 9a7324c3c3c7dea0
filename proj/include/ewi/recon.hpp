#ifndef EWI_RECON_HPP
#define EWI_RECON_HPP

#include <algorithm>
#include <functional>
#include <optional>

#include "ewi/imaging.hpp"

// Sampling grids, indicator-field evaluation, significant-local-maximizer
// extraction, coarse-to-fine refinement, tensor readout and error reporting.

namespace ewi {

// Axis-aligned box grid, endpoints included. Flat node order has axis 0
// fastest: flat = ix + nx*(iy + ny*iz).
template <std::size_t D>
struct SamplingGrid {
    Vec<D> lower{};
    Vec<D> upper{};
    std::array<int, D> counts{};

    std::size_t total() const {
        std::size_t t = 1;
        for (std::size_t a = 0; a < D; ++a) t *= static_cast<std::size_t>(counts[a]);
        return t;
    }
    double spacing(std::size_t axis) const {
        return counts[axis] > 1 ? (upper[axis] - lower[axis]) / (counts[axis] - 1) : 0.0;
    }
    Vec<D> node(std::size_t flat) const {
        Vec<D> p;
        for (std::size_t a = 0; a < D; ++a) {
            const std::size_t n = static_cast<std::size_t>(counts[a]);
            const std::size_t i = flat % n;
            flat /= n;
            p[a] = lower[a] + spacing(a) * static_cast<double>(i);
        }
        return p;
    }
    // largest |z| over the box (phase band of e^{i w xhat.z} on this grid)
    double circumradius() const {
        double best = 0.0;
        for (std::size_t corner = 0; corner < (1u << D); ++corner) {
            Vec<D> p;
            for (std::size_t a = 0; a < D; ++a)
                p[a] = (corner >> a) & 1 ? upper[a] : lower[a];
            best = std::max(best, norm<D>(p));
        }
        return best;
    }
};

template <std::size_t D>
SamplingGrid<D> make_grid(const Vec<D>& lower, const Vec<D>& upper,
                          const std::array<int, D>& counts) {
    for (std::size_t a = 0; a < D; ++a) {
        if (counts[a] < 2) throw std::invalid_argument("grid: counts must be >= 2 per axis");
        if (!(upper[a] > lower[a]))
            throw std::invalid_argument("grid: upper must exceed lower per axis");
    }
    return SamplingGrid<D>{lower, upper, counts};
}

template <std::size_t D>
struct IndicatorField {
    SamplingGrid<D> grid;
    std::vector<IndicatorValue<D>> values; // flat node order
};

// One shared R table, sampling points differ only in the phase factor.
template <std::size_t D>
IndicatorField<D> evaluate_field(const RTable<D>& tab, const SamplingGrid<D>& grid) {
    IndicatorField<D> field;
    field.grid = grid;
    field.values.assign(grid.total(), IndicatorValue<D>{});
    const std::size_t nx = static_cast<std::size_t>(grid.counts[0]);
    const std::size_t rows = grid.total() / nx;
    const double h = grid.spacing(0);
    parallel_for(rows, [&](std::size_t rb, std::size_t re) {
        for (std::size_t row = rb; row < re; ++row)
            imaging_detail::indicator_run<D>(tab, grid.node(row * nx), h, nx,
                                             &field.values[row * nx]);
    });
    return field;
}

template <std::size_t D>
IndicatorField<D> evaluate_field(const CauchyDataset<D>& ds, const DirectionQuadrature<D>& quad,
                                 const SamplingGrid<D>& grid,
                                 const std::vector<int>& omega_indices) {
    return evaluate_field<D>(build_r_table<D>(ds, quad, omega_indices), grid);
}

template <std::size_t D>
struct Peak {
    Vec<D> location{};
    CMat<D> matrix{};
    double score = 0.0;
    int refinement_level = 0;
    Mat<D> tensor{};       // filled by read_tensors
    double imag_norm = 0.0;
    bool tensor_read = false;
};

// Strict local maxima of the score over the 3^d - 1 neighborhood, above
// threshold_fraction of the global maximum, then greedily filtered strongest
// first so survivors are pairwise >= min_separation apart.
template <std::size_t D>
std::vector<Peak<D>> extract_peaks(const IndicatorField<D>& field, double threshold_fraction,
                                   double min_separation) {
    if (!(threshold_fraction > 0.0) || !(threshold_fraction < 1.0))
        throw std::invalid_argument("extract_peaks: threshold_fraction must be in (0,1)");
    if (field.values.empty()) throw std::invalid_argument("extract_peaks: empty field");

    double global = 0.0;
    for (const auto& v : field.values) global = std::max(global, v.score);
    if (global == 0.0) return {};
    const double cut = threshold_fraction * global;

    const auto& g = field.grid;
    std::vector<std::size_t> candidates;
    for (std::size_t flat = 0; flat < field.values.size(); ++flat) {
        const double s = field.values[flat].score;
        if (s < cut) continue;
        std::array<int, D> idx;
        std::size_t rem = flat;
        for (std::size_t a = 0; a < D; ++a) {
            idx[a] = static_cast<int>(rem % static_cast<std::size_t>(g.counts[a]));
            rem /= static_cast<std::size_t>(g.counts[a]);
        }
        bool is_max = true;
        std::array<int, D> d{};
        // iterate offsets in {-1,0,1}^D except all-zero
        int total = 1;
        for (std::size_t a = 0; a < D; ++a) total *= 3;
        for (int code = 0; code < total && is_max; ++code) {
            int c = code;
            bool all_zero = true;
            bool in_bounds = true;
            std::size_t nflat = 0, stride = 1;
            for (std::size_t a = 0; a < D; ++a) {
                d[a] = (c % 3) - 1;
                c /= 3;
                if (d[a] != 0) all_zero = false;
                const int ni = idx[a] + d[a];
                if (ni < 0 || ni >= g.counts[a]) in_bounds = false;
                nflat += stride * static_cast<std::size_t>(std::max(0, ni));
                stride *= static_cast<std::size_t>(g.counts[a]);
            }
            if (all_zero || !in_bounds) continue;
            if (field.values[nflat].score >= s) is_max = false;
        }
        if (is_max) candidates.push_back(flat);
    }

    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        if (field.values[a].score != field.values[b].score)
            return field.values[a].score > field.values[b].score;
        return a < b;
    });

    std::vector<Peak<D>> peaks;
    for (std::size_t flat : candidates) {
        const Vec<D> loc = g.node(flat);
        bool ok = true;
        for (const auto& kept : peaks)
            if (norm<D>(loc - kept.location) < min_separation) ok = false;
        if (!ok) continue;
        Peak<D> pk;
        pk.location = loc;
        pk.matrix = field.values[flat].matrix;
        pk.score = field.values[flat].score;
        peaks.push_back(pk);
    }
    return peaks;
}

template <std::size_t D>
using FieldEvaluator = std::function<IndicatorField<D>(const SamplingGrid<D>&)>;

// For each peak: evaluate the indicator on a local box of side 2/omega*
// centered on the peak (clipped to the sampling domain), move the peak to the
// local argmax; repeat `levels` times shrinking the box 4x per level.
template <std::size_t D>
std::vector<Peak<D>> refine_peaks(const FieldEvaluator<D>& evaluate, const Vec<D>& domain_lower,
                                  const Vec<D>& domain_upper, double omega_star,
                                  std::vector<Peak<D>> peaks, int levels, int nodes_per_axis) {
    if (levels < 0) throw std::invalid_argument("refine_peaks: levels must be >= 0");
    if (levels > 0 && nodes_per_axis < 2)
        throw std::invalid_argument("refine_peaks: nodes_per_axis must be >= 2");
    for (auto& pk : peaks) {
        double side = 2.0 / omega_star;
        for (int lev = 0; lev < levels; ++lev) {
            Vec<D> lo, hi;
            for (std::size_t a = 0; a < D; ++a) {
                lo[a] = std::max(domain_lower[a], pk.location[a] - side / 2.0);
                hi[a] = std::min(domain_upper[a], pk.location[a] + side / 2.0);
            }
            std::array<int, D> counts;
            counts.fill(nodes_per_axis);
            const SamplingGrid<D> local = make_grid<D>(lo, hi, counts);
            const IndicatorField<D> f = evaluate(local);
            std::size_t best = 0;
            for (std::size_t i = 1; i < f.values.size(); ++i)
                if (f.values[i].score > f.values[best].score) best = i;
            pk.location = local.node(best);
            pk.matrix = f.values[best].matrix;
            pk.score = f.values[best].score;
            pk.refinement_level += 1;
            side /= 4.0;
        }
    }
    return peaks;
}

template <std::size_t D>
std::vector<Peak<D>> refine_peaks(const CauchyDataset<D>& ds, const DirectionQuadrature<D>& quad,
                                  const SamplingGrid<D>& domain, std::vector<Peak<D>> peaks,
                                  int levels, int nodes_per_axis,
                                  const std::vector<int>& omega_indices) {
    const RTable<D> tab = build_r_table<D>(ds, quad, omega_indices);
    const FieldEvaluator<D> eval = [&tab](const SamplingGrid<D>& g) {
        return evaluate_field<D>(tab, g);
    };
    return refine_peaks<D>(eval, domain.lower, domain.upper, ds.ladder.omega_star,
                           std::move(peaks), levels, nodes_per_axis);
}

// reconstructed tensor = real part of the indicator matrix; the imaginary
// Frobenius norm is kept as a quality diagnostic
template <std::size_t D>
std::vector<Peak<D>> read_tensors(std::vector<Peak<D>> peaks) {
    for (auto& pk : peaks) {
        pk.tensor = real_part(pk.matrix);
        pk.imag_norm = imag_frob(pk.matrix);
        pk.tensor_read = true;
    }
    return peaks;
}

struct MatchEntry {
    int peak_index = -1;
    int truth_index = -1;
    double location_error = 0.0;
    double tensor_rel_error = 0.0;
    double imag_norm = 0.0;
};

template <std::size_t D>
struct ReconstructionReport {
    std::vector<Peak<D>> peaks;
    bool has_truth = false;
    std::vector<MatchEntry> matches;
    int unmatched_truth = 0;
    int unmatched_peaks = 0;
    double match_radius = 0.0;
    std::optional<double> peak_to_sidelobe;
};

// Greedy nearest-pair matching with a distance cap (the resolution radius);
// injective by construction.
template <std::size_t D>
ReconstructionReport<D> build_report(const std::vector<Peak<D>>& peaks,
                                     const SourceConfiguration<D>* truth, double match_radius) {
    ReconstructionReport<D> rep;
    rep.peaks = peaks;
    rep.match_radius = match_radius;
    if (!truth) {
        rep.unmatched_peaks = static_cast<int>(peaks.size());
        return rep;
    }
    rep.has_truth = true;
    struct Cand {
        double dist;
        std::size_t p, t;
    };
    std::vector<Cand> cands;
    for (std::size_t p = 0; p < peaks.size(); ++p)
        for (std::size_t t = 0; t < truth->sources.size(); ++t) {
            const double d = norm<D>(peaks[p].location - truth->sources[t].location);
            if (d <= match_radius) cands.push_back({d, p, t});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.p != b.p) return a.p < b.p;
        return a.t < b.t;
    });
    std::vector<bool> pused(peaks.size(), false), tused(truth->sources.size(), false);
    for (const Cand& c : cands) {
        if (pused[c.p] || tused[c.t]) continue;
        pused[c.p] = true;
        tused[c.t] = true;
        MatchEntry m;
        m.peak_index = static_cast<int>(c.p);
        m.truth_index = static_cast<int>(c.t);
        m.location_error = c.dist;
        const Mat<D> got =
            peaks[c.p].tensor_read ? peaks[c.p].tensor : real_part(peaks[c.p].matrix);
        const Mat<D>& want = truth->sources[c.t].tensor;
        m.tensor_rel_error = frob<D>(got - want) / frob<D>(want);
        m.imag_norm = imag_frob(peaks[c.p].matrix);
        rep.matches.push_back(m);
    }
    for (bool u : pused)
        if (!u) ++rep.unmatched_peaks;
    for (bool u : tused)
        if (!u) ++rep.unmatched_truth;
    return rep;
}

// min over centers of (max score within radius) / (max score outside all
// balls); +inf when nothing lies outside or the outside is identically zero
template <std::size_t D>
double peak_to_sidelobe(const IndicatorField<D>& field, const std::vector<Vec<D>>& centers,
                        double radius) {
    std::vector<double> inmax(centers.size(), 0.0);
    double outmax = 0.0;
    for (std::size_t flat = 0; flat < field.values.size(); ++flat) {
        const Vec<D> z = field.grid.node(flat);
        bool inside_any = false;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            if (norm<D>(z - centers[c]) <= radius) {
                inside_any = true;
                inmax[c] = std::max(inmax[c], field.values[flat].score);
            }
        }
        if (!inside_any) outmax = std::max(outmax, field.values[flat].score);
    }
    double inmin = std::numeric_limits<double>::infinity();
    for (double v : inmax) inmin = std::min(inmin, v);
    if (outmax == 0.0) return std::numeric_limits<double>::infinity();
    return inmin / outmax;
}

// ---- field/report persistence ----

using AnyField = std::variant<IndicatorField<2>, IndicatorField<3>>;

void write_field_csv(const IndicatorField<2>& f, const std::string& path);
void write_field_csv(const IndicatorField<3>& f, const std::string& path);
AnyField read_field_csv(const std::string& path);

std::string report_to_json(const ReconstructionReport<2>& rep,
                           const std::string& effective_config_json);
std::string report_to_json(const ReconstructionReport<3>& rep,
                           const std::string& effective_config_json);

} // namespace ewi

#endif // EWI_RECON_HPP

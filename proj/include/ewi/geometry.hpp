#ifndef EWI_GEOMETRY_HPP
#define EWI_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ewi/linalg.hpp"

// Measurement boundary: full circle (2D) or full sphere (3D) centered at the
// origin, with nodes, outward unit normals and quadrature weights summing to
// the surface measure.

namespace ewi {

template <std::size_t D>
struct MeasurementGeometry {
    double radius = 0.0;
    std::vector<Vec<D>> nodes;
    std::vector<Vec<D>> normals;
    std::vector<double> weights;

    std::size_t node_count() const { return nodes.size(); }
};

namespace geometry_detail {

// 2D: equispaced angles, trapezoid weights (spectrally accurate on the circle)
inline MeasurementGeometry<2> circle(double radius, int n) {
    MeasurementGeometry<2> g;
    g.radius = radius;
    g.nodes.reserve(n);
    g.normals.reserve(n);
    g.weights.assign(n, 2.0 * M_PI * radius / n);
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * M_PI * i / n;
        const Vec<2> nu{std::cos(th), std::sin(th)};
        g.normals.push_back(nu);
        g.nodes.push_back(radius * nu);
    }
    return g;
}

// 3D: Fibonacci spiral lattice, equal weights (pseudo-uniform, reproducible)
inline MeasurementGeometry<3> fibonacci_sphere(double radius, int n) {
    MeasurementGeometry<3> g;
    g.radius = radius;
    g.nodes.reserve(n);
    g.normals.reserve(n);
    g.weights.assign(n, 4.0 * M_PI * radius * radius / n);
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * i;
        const Vec<3> nu{s * std::cos(phi), s * std::sin(phi), z};
        g.normals.push_back(nu);
        g.nodes.push_back(radius * nu);
    }
    return g;
}

} // namespace geometry_detail

template <std::size_t D>
MeasurementGeometry<D> build_geometry(double radius, int node_count) {
    static_assert(D == 2 || D == 3);
    if (!(radius > 0.0)) throw std::invalid_argument("geometry: radius must be > 0");
    if (node_count < 8) throw std::invalid_argument("geometry: node_count must be >= 8");
    if constexpr (D == 2)
        return geometry_detail::circle(radius, node_count);
    else
        return geometry_detail::fibonacci_sphere(radius, node_count);
}

template <std::size_t D>
inline double surface_measure(double radius) {
    if constexpr (D == 2)
        return 2.0 * M_PI * radius;
    else
        return 4.0 * M_PI * radius * radius;
}

template <std::size_t D>
void validate_geometry(const MeasurementGeometry<D>& g) {
    if (!(g.radius > 0.0)) throw std::invalid_argument("geometry.radius: must be > 0");
    const std::size_t n = g.nodes.size();
    if (n == 0 || g.normals.size() != n || g.weights.size() != n)
        throw std::invalid_argument("geometry: nodes/normals/weights must be nonempty and equal length");
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(norm<D>(g.nodes[i]) - g.radius) > 1e-10 * std::max(1.0, g.radius))
            throw std::invalid_argument("geometry.nodes[" + std::to_string(i) +
                                        "]: not on the sphere of the stated radius");
        const Vec<D> expect = (1.0 / g.radius) * g.nodes[i];
        if (std::abs(norm<D>(g.normals[i]) - 1.0) > 1e-12 ||
            norm<D>(g.normals[i] - expect) > 1e-10)
            throw std::invalid_argument("geometry.normals[" + std::to_string(i) +
                                        "]: must equal node/radius and be unit length");
        wsum += g.weights[i];
    }
    const double measure = surface_measure<D>(g.radius);
    if (std::abs(wsum - measure) > 1e-8 * measure)
        throw std::invalid_argument("geometry.weights: must sum to the surface measure");
}

} // namespace ewi

#endif // EWI_GEOMETRY_HPP

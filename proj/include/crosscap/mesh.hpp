#pragma once

// Grid sampling of the umbrella, of ruled surfaces, and of the image curve,
// with a minimal Wavefront OBJ writer.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crosscap/developable.hpp"
#include "crosscap/model.hpp"

namespace crosscap {

class mesh_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Range {
    double lo = -1;
    double hi = 1;
    friend bool operator==(const Range&, const Range&) = default;
};

struct Mesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 4>> quads;  // 0-based indices
    std::vector<std::vector<int>> lines;
};

inline double grid_point(const Range& r, int i, int n) {
    // hit the midpoint exactly so symmetric ranges contain 0
    if (2 * i == n - 1) return 0.5 * (r.lo + r.hi);
    return r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

inline void check_grid(const Range& r, int n, const char* what) {
    if (n < 2) throw mesh_error(std::string(what) + " resolution must be at least 2");
    if (!(r.hi > r.lo) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
        throw mesh_error(std::string(what) + " range is degenerate");
}

/// nx * ny vertices, x-major, with (nx - 1)(ny - 1) quads.
inline Mesh sample_grid(const std::function<std::array<double, 3>(double, double)>& f, const Range& xr, int nx,
                        const Range& yr, int ny) {
    check_grid(xr, nx, "x");
    check_grid(yr, ny, "y");
    Mesh m;
    m.vertices.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) m.vertices.push_back(f(grid_point(xr, i, nx), grid_point(yr, j, ny)));
    for (int i = 0; i + 1 < nx; ++i)
        for (int j = 0; j + 1 < ny; ++j) {
            const int a = i * ny + j;
            m.quads.push_back({a, a + ny, a + ny + 1, a + 1});
        }
    return m;
}

inline Mesh sample_polyline(const std::function<std::array<double, 3>(double)>& f, const Range& xr, int n) {
    check_grid(xr, n, "x");
    Mesh m;
    std::vector<int> line;
    for (int i = 0; i < n; ++i) {
        m.vertices.push_back(f(grid_point(xr, i, n)));
        line.push_back(i);
    }
    m.lines.push_back(std::move(line));
    return m;
}

inline std::array<double, 3> evaluate_umbrella(const Umbrella& w, double u, double v) {
    std::array<double, 3> out{};
    for (std::size_t c = 0; c < 3; ++c)
        w.component[c].for_each_nonzero([&](int i, int j, const Rational& a) {
            out[c] += field_cast<double>(a) * std::pow(u, i) * std::pow(v, j);
        });
    return out;
}

inline Mesh sample_umbrella(const Umbrella& w, const Range& ur, int nu, const Range& vr, int nv) {
    return sample_grid([&](double u, double v) { return evaluate_umbrella(w, u, v); }, ur, nu, vr, nv);
}

inline Mesh sample_image_curve(const Umbrella& w, const PlaneCurve& c, const Range& xr, int n) {
    const auto first = series_cast<Real>(c.first);
    const auto second = series_cast<Real>(c.second);
    return sample_polyline([&](double x) { return evaluate_umbrella(w, first.evaluate(x), second.evaluate(x)); }, xr,
                           n);
}

/// F(x, y) = gamma(x) + y xi(x).
inline Mesh sample_ruled_surface(const RuledSurface& s, const Range& xr, int nx, const Range& yr, int ny) {
    return sample_grid(
        [&](double x, double y) {
            const auto g = s.gamma.evaluate(x);
            const auto d = s.xi.evaluate(x);
            return std::array<double, 3>{g[0] + y * d[0], g[1] + y * d[1], g[2] + y * d[2]};
        },
        xr, nx, yr, ny);
}

inline std::string format_coordinate(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline void write_obj(std::ostream& out, const Mesh& m) {
    for (const auto& v : m.vertices) {
        for (double c : v)
            if (!std::isfinite(c)) throw mesh_error("non-finite vertex coordinate");
        out << "v " << format_coordinate(v[0]) << ' ' << format_coordinate(v[1]) << ' ' << format_coordinate(v[2])
            << '\n';
    }
    for (const auto& q : m.quads) out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
    for (const auto& l : m.lines) {
        out << 'l';
        for (int i : l) out << ' ' << i + 1;
        out << '\n';
    }
}

}  // namespace crosscap

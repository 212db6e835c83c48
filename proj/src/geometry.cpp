#include "szg/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>

namespace szg {

double DomainGeometry::scale() const {
    double s = 0.0;
    for (const cpx& p : z) s = std::max(s, std::abs(p));
    return s;
}

double DomainGeometry::max_node_spacing() const {
    double s = 0.0;
    for (std::size_t c = 0; c + 1 < comp_begin.size(); ++c) {
        const std::size_t n = comp_begin[c + 1] - comp_begin[c];
        const double h = 2.0 * pi / static_cast<double>(n);
        for (std::size_t i = comp_begin[c]; i < comp_begin[c + 1]; ++i)
            s = std::max(s, absdz[i] * h);
    }
    return s;
}

namespace {

std::uint64_t next_domain_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

CurveComponent sample_circle(cpx center, double r, int orientation, int n) {
    CurveComponent c;
    c.orientation = orientation;
    c.t.resize(n);
    c.z.resize(n);
    c.dz.resize(n);
    c.ddz.resize(n);
    const double h = 2.0 * pi / n;
    const double s = (orientation > 0) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        const cpx e = std::polar(r, s * t);
        c.t[i] = t;
        c.z[i] = center + e;
        c.dz[i] = iunit * s * e;
        c.ddz[i] = -e;
    }
    return c;
}

CurveComponent sample_ellipse(double a, double b, int n) {
    CurveComponent c;
    c.orientation = +1;
    c.t.resize(n);
    c.z.resize(n);
    c.dz.resize(n);
    c.ddz.resize(n);
    const double h = 2.0 * pi / n;
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        c.t[i] = t;
        c.z[i] = cpx(a * std::cos(t), b * std::sin(t));
        c.dz[i] = cpx(-a * std::sin(t), b * std::cos(t));
        c.ddz[i] = -c.z[i];
    }
    return c;
}

CurveComponent sample_star(double r0, double amp, double m, int n) {
    CurveComponent c;
    c.orientation = +1;
    c.t.resize(n);
    c.z.resize(n);
    c.dz.resize(n);
    c.ddz.resize(n);
    const double h = 2.0 * pi / n;
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        const double r = r0 * (1.0 + amp * std::cos(m * t));
        const double rp = -r0 * amp * m * std::sin(m * t);
        const double rpp = -r0 * amp * m * m * std::cos(m * t);
        const cpx e = std::polar(1.0, t);
        c.t[i] = t;
        c.z[i] = r * e;
        c.dz[i] = cpx(rp, r) * e;
        c.ddz[i] = cpx(rpp - r, 2.0 * rp) * e;
    }
    return c;
}

void finalize(DomainGeometry& d) {
    d.comp_begin.assign(1, 0);
    for (const CurveComponent& c : d.components) {
        const std::size_t n = c.z.size();
        const double h = 2.0 * pi / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double ad = std::abs(c.dz[i]);
            if (!(ad > 1e-12))
                throw invalid_input("degenerate boundary: |dz| vanishes at a node of preset '" +
                                    d.preset + "'");
            d.z.push_back(c.z[i]);
            d.dz.push_back(c.dz[i]);
            d.tangent.push_back(c.dz[i] / ad);
            d.absdz.push_back(ad);
            d.qnode.push_back(ad * h);
            d.comp_of.push_back(static_cast<int>(d.comp_begin.size()) - 1);
        }
        d.comp_begin.push_back(d.z.size());
    }
    d.id = next_domain_id();
}

}  // namespace

DomainGeometry make_preset(const std::string& name, const std::vector<double>& params,
                           int nodes_per_component) {
    if (nodes_per_component < 16 || nodes_per_component % 2 != 0)
        throw invalid_input("nodes_per_component must be even and >= 16");

    DomainGeometry d;
    d.preset = name;
    const int n = nodes_per_component;

    if (name == "disc") {
        std::vector<double> p = params.empty() ? std::vector<double>{1.0} : params;
        if (p.size() != 1 || !(p[0] > 0.0)) throw invalid_input("disc expects params [r] with r > 0");
        d.params = p;
        d.components.push_back(sample_circle(0.0, p[0], +1, n));
    } else if (name == "ellipse") {
        std::vector<double> p = params.empty() ? std::vector<double>{1.0, 0.6} : params;
        if (p.size() != 2 || !(p[0] > 0.0) || !(p[1] > 0.0))
            throw invalid_input("ellipse expects params [a, b] with a, b > 0");
        d.params = p;
        d.components.push_back(sample_ellipse(p[0], p[1], n));
    } else if (name == "smooth-star") {
        std::vector<double> p = params.empty() ? std::vector<double>{1.0, 0.3, 5.0} : params;
        if (p.size() != 3 || !(p[0] > 0.0) || !(p[1] >= 0.0) || !(p[1] < 1.0) || !(p[2] > 0.0))
            throw invalid_input("smooth-star expects params [r0, amp, m] with r0 > 0, 0 <= amp < 1, m > 0");
        d.params = p;
        d.components.push_back(sample_star(p[0], p[1], p[2], n));
    } else if (name == "annulus") {
        std::vector<double> p = params.empty() ? std::vector<double>{1.0, 0.5} : params;
        if (p.size() != 2 || !(p[1] > 0.0) || !(p[1] < p[0]))
            throw invalid_input("annulus expects params [R, rho] with 0 < rho < R");
        d.params = p;
        d.components.push_back(sample_circle(0.0, p[0], +1, n));
        d.components.push_back(sample_circle(0.0, p[1], -1, n));
    } else if (name == "circle-holes") {
        std::vector<double> p = params.empty()
                                    ? std::vector<double>{1.0, -0.45, 0.0, 0.18, 0.45, 0.0, 0.18}
                                    : params;
        if (p.size() < 4 || (p.size() - 1) % 3 != 0)
            throw invalid_input("circle-holes expects params [R, cx1, cy1, r1, ...]");
        const double R = p[0];
        if (!(R > 0.0)) throw invalid_input("circle-holes outer radius must be positive");
        d.params = p;
        d.components.push_back(sample_circle(0.0, R, +1, n));
        const std::size_t holes = (p.size() - 1) / 3;
        std::vector<cpx> centers;
        std::vector<double> radii;
        for (std::size_t k = 0; k < holes; ++k) {
            const cpx c(p[1 + 3 * k], p[2 + 3 * k]);
            const double r = p[3 + 3 * k];
            if (!(r > 0.0)) throw invalid_input("circle-holes hole radius must be positive");
            if (!(std::abs(c) + r < R))
                throw invalid_input("circle-holes hole must lie strictly inside the outer circle");
            for (std::size_t j = 0; j < centers.size(); ++j)
                if (!(std::abs(c - centers[j]) > r + radii[j]))
                    throw invalid_input("circle-holes holes must be pairwise disjoint");
            centers.push_back(c);
            radii.push_back(r);
            d.components.push_back(sample_circle(c, r, -1, n));
        }
    } else {
        throw invalid_input("unknown preset '" + name +
                            "' (expected disc, ellipse, smooth-star, annulus, circle-holes)");
    }

    finalize(d);
    return d;
}

namespace {

// Crossing-count winding of the closed node polygon around p. Caller
// guarantees p is bounded away from the nodes.
int polygon_winding(const std::vector<cpx>& loop, std::size_t begin, std::size_t end, cpx p) {
    int w = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const cpx a = loop[i];
        const cpx b = loop[(i + 1 < end) ? i + 1 : begin];
        const double cross =
            (b.real() - a.real()) * (p.imag() - a.imag()) - (b.imag() - a.imag()) * (p.real() - a.real());
        if (a.imag() <= p.imag()) {
            if (b.imag() > p.imag() && cross > 0.0) ++w;
        } else {
            if (b.imag() <= p.imag() && cross < 0.0) --w;
        }
    }
    return w;
}

}  // namespace

int winding_number(const DomainGeometry& d, cpx p) {
    for (const cpx& q : d.z)
        if (std::abs(p - q) < 1e-9)
            throw invalid_input("winding_number: point is within 1e-9 of a boundary node");
    int w = 0;
    for (std::size_t c = 0; c + 1 < d.comp_begin.size(); ++c)
        w += polygon_winding(d.z, d.comp_begin[c], d.comp_begin[c + 1], p);
    return w;
}

double boundary_distance(const DomainGeometry& d, cpx p) {
    double best = std::numeric_limits<double>::infinity();
    for (const cpx& q : d.z) best = std::min(best, std::abs(p - q));
    return best;
}

int argument_winding(const std::vector<cpx>& loop, cpx p) {
    double total = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cpx a = loop[i] - p;
        const cpx b = loop[(i + 1) % n] - p;
        if (std::abs(a) < 1e-9 || std::abs(b) < 1e-9)
            throw invalid_input("argument_winding: point is within 1e-9 of a sample");
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

}  // namespace szg

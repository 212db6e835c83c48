#include "szg/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace szg {

Flagged<cpx> szego_interior(const SzegoSolution& sol, cpx zp, const DomainGeometry& d) {
    return cauchy_interior(sol.boundary, zp, d);
}

double hermitian_symmetry_residual(const SzegoSolver& solver, cpx z1, cpx z2) {
    if (std::abs(z1 - z2) < 1e-12)
        throw invalid_input("hermitian_symmetry_residual: points must be distinct");
    return std::abs(solver.eval(z1, z2) - std::conj(solver.eval(z2, z1)));
}

GarabedianSolution garabedian_from_szego(const SzegoSolution& sol, const DomainGeometry& d,
                                         const WeightField& w) {
    if (sol.domain_id != d.id || w.domain_id != d.id || sol.weight_id != w.id)
        throw invalid_input("garabedian_from_szego: domain/weight mismatch");
    const std::size_t n = d.total_nodes();
    GarabedianSolution g;
    g.a = sol.a;
    g.domain_id = d.id;
    g.weight_id = w.id;
    g.boundary_L.domain_id = d.id;
    g.boundary_L.values.resize(n);
    g.boundary_l.domain_id = d.id;
    g.boundary_l.values.resize(n);
    g.boundary_L.near_boundary = g.boundary_l.near_boundary = sol.boundary.near_boundary;
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cpx s = sol.boundary.values[i];
        const cpx L = iunit * w.phi[i] * std::conj(s) * std::conj(d.tangent[i]);
        g.boundary_L.values[i] = L;
        g.boundary_l.values[i] = L - 1.0 / (2.0 * pi * (d.z[i] - sol.a));
        const cpx t = d.dz[i] / std::abs(d.dz[i]);
        resid = std::max(resid, std::abs(w.phi[i] * std::conj(s) - (L * t) / iunit));
    }
    g.boundary_identity_residual = resid;
    return g;
}

Flagged<cpx> garabedian_interior(const GarabedianSolution& gar, cpx zp, const DomainGeometry& d) {
    if (gar.domain_id != d.id) throw invalid_input("garabedian_interior: domain mismatch");
    if (std::abs(zp - gar.a) < 1e-12)
        throw invalid_input("garabedian_interior: evaluation at the pole");
    Flagged<cpx> out = cauchy_interior(gar.boundary_l, zp, d);
    out.value += 1.0 / (2.0 * pi * (zp - gar.a));
    return out;
}

LRegularEvaluator::LRegularEvaluator(const DomainGeometry& d, const WeightField& w)
    : d_(d), recip_(reciprocal(d, w)), m_(assemble_ks(d, recip_)) {}

Flagged<cpx> LRegularEvaluator::eval(cpx zp, cpx a) const {
    const auto key = std::make_pair(a.real(), a.imag());
    auto it = ycache_.find(key);
    if (it == ycache_.end()) {
        if (winding_number(d_, a) != 1)
            throw invalid_input("l_regular: pole is not interior");
        const std::size_t n = d_.total_nodes();
        Eigen::VectorXcd g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = 1.0 / (2.0 * pi * (d_.z[i] - a));
        // u = A_{1/phi} G_a through the discrete measure, then (I+B) y = u
        const Eigen::VectorXcd u = m_.entries * (m_.qweights.asDiagonal() * g);
        const Eigen::VectorXcd y = m_.factor_plus().solve(u);
        BoundaryField yf;
        yf.domain_id = d_.id;
        yf.values.assign(y.data(), y.data() + n);
        it = ycache_.emplace(key, std::move(yf)).first;
    }
    return cauchy_interior(it->second, zp, d_);
}

Flagged<cpx> l_regular_interior(cpx a, cpx zp, const DomainGeometry& d, const WeightField& w) {
    return LRegularEvaluator(d, w).eval(zp, a);
}

double reflection_identity_residual(const SzegoSolver& solver, const SzegoSolver& recip_solver,
                                    cpx a, cpx zp) {
    if (std::abs(a - zp) < 1e-12)
        throw invalid_input("reflection_identity_residual: points must be distinct");
    const DomainGeometry& d = solver.domain();
    const GarabedianSolution g1 =
        garabedian_from_szego(solver.solve(a), d, solver.weight());
    const GarabedianSolution g2 =
        garabedian_from_szego(recip_solver.solve(zp), d, recip_solver.weight());
    const cpx L1 = garabedian_interior(g1, zp, d);
    const cpx L2 = garabedian_interior(g2, a, d);
    return std::abs(L1 + L2);
}

double reflection_identity_residual(cpx a, cpx zp, const DomainGeometry& d, const WeightField& w) {
    SzegoSolver s(d, w);
    SzegoSolver r(d, reciprocal(d, w));
    return reflection_identity_residual(s, r, a, zp);
}

double reproducing_residual(const SzegoSolution& sol, const BoundaryField& h, cpx ha,
                            const DomainGeometry& d, const WeightField& w) {
    if (sol.domain_id != d.id || sol.weight_id != w.id)
        throw invalid_input("reproducing_residual: domain/weight mismatch");
    return std::abs(weighted_inner(h, sol.boundary, w, d) - ha);
}

int zero_count(const SzegoSolution& sol, const DomainGeometry& d) {
    if (sol.domain_id != d.id) throw invalid_input("zero_count: domain mismatch");
    for (const cpx& v : sol.boundary.values)
        if (std::abs(v) < 1e-8)
            throw numeric_error("zero_count: boundary sample of |S| below 1e-8 (zero too close to the boundary)");
    int total = 0;
    for (std::size_t c = 0; c + 1 < d.comp_begin.size(); ++c) {
        const std::vector<cpx> loop(sol.boundary.values.begin() + d.comp_begin[c],
                                    sol.boundary.values.begin() + d.comp_begin[c + 1]);
        total += argument_winding(loop, 0.0);
    }
    return total;
}

namespace {

struct Box {
    double x0, x1, y0, y1;
    double size() const { return std::max(x1 - x0, y1 - y0); }
    cpx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    bool contains(cpx p) const {
        return p.real() > x0 && p.real() < x1 && p.imag() > y0 && p.imag() < y1;
    }
};

class ZeroSearch {
  public:
    ZeroSearch(const SzegoSolution& sol, const DomainGeometry& d)
        : d_(d),
          ev_(sol.boundary, d),
          margin_(1.2 * d.max_node_spacing()),
          clear_(0.6 * margin_),
          min_size_(std::max(1.5 * margin_, 1e-3 * d.scale())) {}

    std::vector<cpx> run(int expected) {
        if (expected == 0) return {};
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (const cpx& z : d_.z) {
            x0 = std::min(x0, z.real());
            x1 = std::max(x1, z.real());
            y0 = std::min(y0, z.imag());
            y1 = std::max(y1, z.imag());
        }
        // asymmetric padding keeps subdivision lines off symmetry axes, where
        // zeros of symmetric configurations like to sit
        const double dx = x1 - x0, dy = y1 - y0;
        process({x0 - 0.0137 * dx, x1 + 0.0071 * dx, y0 - 0.0113 * dy, y1 + 0.0197 * dy});
        std::vector<cpx> unique = dedupe();
        // zeros can hug a component closer than any admissible box reaches; scan
        // curves offset inward from each component for |S| minima and polish those
        for (double f : {0.15, 0.3, 0.6, 1.2}) {
            if (static_cast<int>(unique.size()) >= expected) break;
            seed_offset_minima(f * margin_);
            unique = dedupe();
        }
        if (static_cast<int>(unique.size()) != expected)
            throw numeric_error("zero_locate: located " + std::to_string(unique.size()) +
                                " zeros but the argument principle counts " +
                                std::to_string(expected));
        return unique;
    }

  private:
    std::vector<cpx> dedupe() {
        std::sort(found_.begin(), found_.end(), [](cpx a, cpx b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        std::vector<cpx> unique;
        for (const cpx& z : found_)
            if (unique.empty() || std::abs(z - unique.back()) > 1e-6) unique.push_back(z);
        return unique;
    }

    void seed_offset_minima(double offset) {
        for (std::size_t c = 0; c + 1 < d_.comp_begin.size(); ++c) {
            const std::size_t b = d_.comp_begin[c];
            const std::size_t n = d_.comp_begin[c + 1] - b;
            std::vector<double> mag(n, 1e300);
            std::vector<cpx> pts(n);
            for (std::size_t i = 0; i < n; ++i) {
                // i*tangent points into the domain on every component (the domain
                // lies to the left of the oriented boundary)
                const cpx th = d_.tangent[b + i] / std::abs(d_.tangent[b + i]);
                pts[i] = d_.z[b + i] + offset * (iunit * th);
                try {
                    if (winding_number(d_, pts[i]) != 1) continue;
                } catch (const invalid_input&) {
                    continue;
                }
                mag[i] = std::abs(ev_.eval(pts[i]));
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (mag[i] >= 1e300) continue;
                if (mag[i] > mag[(i + n - 1) % n] || mag[i] > mag[(i + 1) % n]) continue;
                cpx z;
                if (newton(pts[i], z, 30)) found_.push_back(z);
            }
        }
    }

    bool any_node_inside(const Box& b) const {
        for (const cpx& z : d_.z)
            if (b.contains(z)) return true;
        return false;
    }

    void perimeter(const Box& b, int per_edge, std::vector<cpx>& pts) const {
        pts.clear();
        const cpx corners[4] = {{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}};
        for (int e = 0; e < 4; ++e) {
            const cpx s = corners[e], t = corners[(e + 1) % 4];
            for (int j = 0; j < per_edge; ++j)
                pts.push_back(s + (t - s) * (static_cast<double>(j) / per_edge));
        }
    }

    bool edges_interior(const Box& b) const {
        const int per_edge = std::max(10, static_cast<int>(std::ceil(b.size() / (0.5 * margin_))));
        std::vector<cpx> pts;
        perimeter(b, per_edge, pts);
        for (const cpx& p : pts) {
            try {
                if (winding_number(d_, p) != 1) return false;
            } catch (const invalid_input&) {
                return false;
            }
            if (boundary_distance(d_, p) < clear_) return false;
        }
        return true;
    }

    // argument winding of S along the box boundary; ok=false when phase steps
    // stay unresolved after refinement
    int s_winding(const Box& b, bool& ok) const {
        int per_edge = std::max(12, static_cast<int>(std::ceil(b.size() / (0.5 * margin_))));
        std::vector<cpx> pts;
        for (int attempt = 0; attempt < 6; ++attempt, per_edge *= 2) {
            perimeter(b, per_edge, pts);
            double total = 0.0;
            bool bad = false;
            cpx prev = ev_.eval(pts[0]);
            if (std::abs(prev) < 1e-13) bad = true;
            for (std::size_t j = 1; !bad && j <= pts.size(); ++j) {
                const cpx cur = ev_.eval(pts[j % pts.size()]);
                if (std::abs(cur) < 1e-13) {
                    bad = true;
                    break;
                }
                const double da = std::arg(cur / prev);
                if (std::abs(da) > 2.6) {
                    bad = true;
                    break;
                }
                total += da;
                prev = cur;
            }
            if (!bad) {
                ok = true;
                return static_cast<int>(std::lround(total / (2.0 * pi)));
            }
        }
        ok = false;
        return 0;
    }

    bool newton(cpx z, cpx& out, int max_it = 40) const {
        for (int it = 0; it < max_it; ++it) {
            try {
                if (winding_number(d_, z) != 1) return false;
            } catch (const invalid_input&) {
                return false;
            }
            const double bd = boundary_distance(d_, z);
            // the normalized Cauchy evaluation stays at machine accuracy well below
            // one node spacing, so only a degenerate boundary hug is excluded here;
            // overshooting iterates may dip close to the curve and still recover
            if (bd < 1e-4 * d_.scale()) return false;
            const cpx s = ev_.eval(z);
            const double r = 0.5 * bd;
            cpx sp = 0.0;
            for (int j = 0; j < 64; ++j) {
                const cpx e = std::polar(1.0, 2.0 * pi * j / 64.0);
                sp += ev_.eval(z + r * e) * std::conj(e);
            }
            sp /= 64.0 * r;
            if (std::abs(sp) < 1e-30) return false;
            const cpx step = s / sp;
            z -= step;
            if (std::abs(step) < 1e-13) break;
        }
        try {
            if (winding_number(d_, z) != 1) return false;
        } catch (const invalid_input&) {
            return false;
        }
        if (!(std::abs(ev_.eval(z)) < 1e-8)) return false;
        out = z;
        return true;
    }

    void process(const Box& b) {
        if (--budget_ < 0) throw numeric_error("zero_locate: subdivision budget exhausted");
        bool adm = false;
        if (!any_node_inside(b) && edges_interior(b)) {
            adm = true;
            bool ok = false;
            const int w = s_winding(b, ok);
            if (ok) {
                if (w == 0) return;
                if (w == 1) {
                    cpx z;
                    if (newton(b.center(), z)) {
                        found_.push_back(z);
                        return;
                    }
                }
            }
        }
        if (b.size() < min_size_) {
            if (adm)
                throw numeric_error("zero_locate: unresolved box at minimum size near " +
                                    std::to_string(b.center().real()) + "+" +
                                    std::to_string(b.center().imag()) + "i");
            // sliver hugging the boundary: a zero may sit closer to the curve than any
            // admissible box reaches, so give Newton a short run before dropping it;
            // duplicates collapse in the final dedupe and the count check guards losses
            cpx z;
            if (newton(b.center(), z, 16)) found_.push_back(z);
            return;
        }
        const double xm = 0.5 * (b.x0 + b.x1), ym = 0.5 * (b.y0 + b.y1);
        process({b.x0, xm, b.y0, ym});
        process({xm, b.x1, b.y0, ym});
        process({b.x0, xm, ym, b.y1});
        process({xm, b.x1, ym, b.y1});
    }

    const DomainGeometry& d_;
    CauchyEvaluator ev_;
    double margin_, clear_, min_size_;
    int budget_ = 40000;
    std::vector<cpx> found_;
};

}  // namespace

std::vector<cpx> zero_locate(const SzegoSolution& sol, const DomainGeometry& d) {
    const int expected = zero_count(sol, d);
    ZeroSearch search(sol, d);
    return search.run(expected);
}

cpx default_ahlfors_pole(const DomainGeometry& d) {
    const double delta = 0.15 * d.scale();
    const std::size_t b = d.comp_begin[0], e = d.comp_begin[1];
    const std::size_t n = e - b;
    const std::size_t trials[] = {0, n / 4, n / 2, 3 * n / 4, n / 8, 3 * n / 8, 5 * n / 8, 7 * n / 8};
    for (std::size_t t : trials) {
        const cpx a = d.z[b + t] + delta * (iunit * d.tangent[b + t]);
        try {
            if (winding_number(d, a) == 1 && boundary_distance(d, a) > 0.5 * delta) return a;
        } catch (const invalid_input&) {
        }
    }
    throw numeric_error("default_ahlfors_pole: no interior point found at the target depth");
}

AhlforsMap make_ahlfors(const SzegoSolver& unit_solver, cpx a) {
    for (double p : unit_solver.weight().phi)
        if (std::abs(p - 1.0) > 1e-14)
            throw invalid_input("make_ahlfors: the Ahlfors map uses the unit weight");
    AhlforsMap f;
    f.a = a;
    f.domain_id = unit_solver.domain().id;
    f.szego = unit_solver.solve(a);
    f.garabedian = garabedian_from_szego(f.szego, unit_solver.domain(), unit_solver.weight());
    return f;
}

AhlforsMap make_ahlfors(const DomainGeometry& d, cpx a) {
    SzegoSolver solver(d, unit_weight(d));
    return make_ahlfors(solver, a);
}

Flagged<cpx> ahlfors_eval(const AhlforsMap& f, cpx zp, const DomainGeometry& d) {
    if (f.domain_id != d.id) throw invalid_input("ahlfors_eval: domain mismatch");
    if (std::abs(zp - f.a) < 1e-12) {
        Flagged<cpx> out;
        out.value = 0.0;
        return out;
    }
    const Flagged<cpx> s = szego_interior(f.szego, zp, d);
    const Flagged<cpx> L = garabedian_interior(f.garabedian, zp, d);
    if (std::abs(L.value) < 1e-12)
        throw numeric_error("ahlfors_eval: Garabedian kernel vanishes at the evaluation point");
    Flagged<cpx> out;
    out.value = s.value / L.value;
    out.near_boundary = s.near_boundary || L.near_boundary;
    return out;
}

BoundaryField ahlfors_boundary(const AhlforsMap& f, const DomainGeometry& d) {
    if (f.domain_id != d.id) throw invalid_input("ahlfors_boundary: domain mismatch");
    BoundaryField out;
    out.domain_id = d.id;
    out.values.resize(d.total_nodes());
    for (std::size_t i = 0; i < d.total_nodes(); ++i) {
        const cpx L = f.garabedian.boundary_L.values[i];
        if (std::abs(L) < 1e-14)
            throw numeric_error("ahlfors_boundary: Garabedian boundary sample vanishes");
        out.values[i] = f.szego.boundary.values[i] / L;
    }
    return out;
}

double interpolation_residual(const SzegoSolver& solver, const AhlforsMap& f,
                              const DomainGeometry& d, cpx z, cpx wq) {
    if (f.domain_id != d.id || solver.domain().id != d.id)
        throw invalid_input("interpolation_residual: domain mismatch");
    std::vector<cpx> as{f.a};
    if (zero_count(f.szego, d) > 0) {
        const std::vector<cpx> zs = zero_locate(f.szego, d);
        as.insert(as.end(), zs.begin(), zs.end());
    }
    for (std::size_t i = 0; i < as.size(); ++i)
        for (std::size_t j = i + 1; j < as.size(); ++j)
            if (std::abs(as[i] - as[j]) <= 1e-3)
                throw invalid_input("interpolation_residual: interpolation nodes are clustered");

    const cpx fz = ahlfors_eval(f, z, d);
    const cpx fw = ahlfors_eval(f, wq, d);
    const cpx denom = 1.0 - fz * std::conj(fw);
    if (std::abs(denom) <= 1e-3)
        throw invalid_input("interpolation_residual: pair too close to the boundary diagonal");

    const int n = static_cast<int>(as.size());
    Eigen::MatrixXcd M(n, n);
    Eigen::VectorXcd v(n), u(n);
    for (int i = 0; i < n; ++i) {
        v[i] = solver.eval(z, as[i]);
        u[i] = std::conj(solver.eval(wq, as[i]));
        for (int j = 0; j < n; ++j) M(i, j) = solver.eval(as[i], as[j]);
    }
    const cpx rhs = (v.transpose() * M.partialPivLu().solve(u)).value() / denom;
    const cpx lhs = solver.eval(z, wq);
    return std::abs(lhs - rhs);
}

}  // namespace szg

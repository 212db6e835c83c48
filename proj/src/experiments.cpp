#include "szg/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace szg {

WeightField WeightFamily::member(const DomainGeometry& d, int k) const {
    if (k < 1) throw invalid_input("weight family index must be >= 1");
    if (family_id == "exp-cos") return exp_cos_weight(d, static_cast<double>(k), component);
    if (family_id == "poly-abs2") return abs_pow_weight(d, cpx(2.0, 0.0), 2.0 / k);
    if (family_id == "constant-blend") return constant_weight(d, 1.0 + 1.0 / k);
    throw invalid_input("unknown weight family: " + family_id);
}

WeightField WeightFamily::limit(const DomainGeometry& d) const { return unit_weight(d); }

WeightFamily make_family(const std::string& id, int component) {
    if (id != "exp-cos" && id != "poly-abs2" && id != "constant-blend")
        throw invalid_input("unknown weight family: " + id);
    return WeightFamily{id, component};
}

std::vector<cpx> default_interior_points(const DomainGeometry& d, int count, double min_bd) {
    if (count < 1) throw invalid_input("interior point count must be >= 1");
    const CurveComponent& outer = d.components[0];
    const std::size_t n = outer.z.size();
    std::vector<cpx> pts;
    const double depths[] = {0.35, 0.22, 0.5, 0.65, 0.12};
    for (double frac : depths) {
        for (std::size_t i = 0; i < n && pts.size() < static_cast<std::size_t>(count);
             i += std::max<std::size_t>(1, n / 16)) {
            cpx tang = outer.dz[i] / std::abs(outer.dz[i]);
            cpx p = outer.z[i] + frac * d.scale() * (iunit * tang);
            if (winding_number(d, p) != 1) continue;
            if (boundary_distance(d, p) < min_bd) continue;
            bool close = false;
            for (cpx q : pts)
                if (std::abs(p - q) < 1e-3) close = true;
            if (!close) pts.push_back(p);
        }
        if (pts.size() >= static_cast<std::size_t>(count)) break;
    }
    if (pts.size() < static_cast<std::size_t>(count))
        throw numeric_error("could not place enough interior points away from the boundary");
    return pts;
}

PairGrid default_interior_grid(const DomainGeometry& d, int npairs) {
    std::vector<cpx> pts = default_interior_points(d, std::max(npairs + 1, 4));
    PairGrid g;
    g.grid_id = "interior-default";
    for (int j = 0; j < npairs; ++j) {
        PointRef a, b;
        a.z = pts[static_cast<std::size_t>(j) % pts.size()];
        b.z = pts[(static_cast<std::size_t>(j) + pts.size() / 2) % pts.size()];
        if (std::abs(a.z - b.z) < 1e-6) b.z = pts[(j + 1) % pts.size()];
        g.pairs.emplace_back(a, b);
    }
    return g;
}

PairGrid default_closure_grid(const DomainGeometry& d, int npairs) {
    std::vector<cpx> pts = default_interior_points(d, npairs);
    PairGrid g;
    g.grid_id = "closure-default";
    const std::size_t total = d.total_nodes();
    for (int j = 0; j < npairs; ++j) {
        PointRef a, b;
        a.z = pts[static_cast<std::size_t>(j)];
        b.is_node = true;
        b.node = (static_cast<std::size_t>(j) * total / static_cast<std::size_t>(npairs) + 3) %
                 total;
        g.pairs.emplace_back(a, b);
    }
    return g;
}

std::vector<cpx> default_boundary_point_zgrid(const DomainGeometry& d, std::size_t w0_node,
                                              int count) {
    if (w0_node >= d.total_nodes()) throw invalid_input("boundary node index out of range");
    cpx zw = d.z[w0_node];
    std::vector<cpx> pts = default_interior_points(d, count + 8);
    std::vector<cpx> out;
    for (cpx p : pts) {
        if (std::abs(p - zw) < 0.2) continue;
        out.push_back(p);
        if (out.size() == static_cast<std::size_t>(count)) break;
    }
    if (out.size() < static_cast<std::size_t>(count))
        throw numeric_error("could not place enough grid points away from the marked node");
    return out;
}

namespace {

// nonincreasing over the second half of the sweep, up to roundoff
bool tail_is_monotone(const std::vector<double>& err) {
    if (err.size() < 2) return true;
    std::size_t start = err.size() / 2;
    if (start == 0) start = 1;
    for (std::size_t i = start; i + 1 < err.size(); ++i)
        if (err[i + 1] > err[i] * (1.0 + 1e-9) + 1e-15) return false;
    return true;
}

// least-squares slope of log(err) against log(k) over the tail
double tail_slope(const std::vector<int>& ks, const std::vector<double>& err) {
    std::vector<double> xs, ys;
    for (std::size_t i = err.size() / 2; i < err.size(); ++i) {
        if (err[i] <= 0.0) continue;
        xs.push_back(std::log(static_cast<double>(ks[i])));
        ys.push_back(std::log(err[i]));
    }
    if (xs.size() < 2) return 0.0;
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= xs.size();
    ym /= ys.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xm) * (ys[i] - ym);
        den += (xs[i] - xm) * (xs[i] - xm);
    }
    return den > 0.0 ? num / den : 0.0;
}

cpx szego_pair_value(const SzegoSolver& s, const std::pair<PointRef, PointRef>& pr) {
    const PointRef& z = pr.first;
    const PointRef& w = pr.second;
    if (z.is_node && w.is_node)
        throw invalid_input("pair grids require at least one interior coordinate");
    if (w.is_node) return s.eval_boundary_arg(z.z, w.node);
    if (z.is_node) return s.eval_node(z.node, w.z);
    return s.eval(z.z, w.z);
}

void check_kmax(int kmax) {
    if (kmax < 2) throw invalid_input("convergence sweeps need kmax >= 2");
}

ConvergenceReport szego_sweep(const std::string& kind, const WeightFamily& fam,
                              const DomainGeometry& d, int kmax, const PairGrid& grid) {
    check_kmax(kmax);
    if (grid.pairs.empty()) throw invalid_input("empty pair grid");
    ConvergenceReport rep;
    rep.kind = kind;
    rep.family_id = fam.family_id;
    rep.grid_id = grid.grid_id;

    SzegoSolver sinf(d, fam.limit(d));
    std::vector<cpx> ref;
    for (const auto& pr : grid.pairs) ref.push_back(szego_pair_value(sinf, pr));

    for (int k = 1; k <= kmax; ++k) {
        SzegoSolver sk(d, fam.member(d, k));
        double sup = 0.0;
        for (std::size_t j = 0; j < grid.pairs.size(); ++j)
            sup = std::max(sup, std::abs(szego_pair_value(sk, grid.pairs[j]) - ref[j]));
        rep.ks.push_back(k);
        rep.sup_errors.push_back(sup);
    }
    rep.tail_monotone = tail_is_monotone(rep.sup_errors);
    rep.slope = tail_slope(rep.ks, rep.sup_errors);
    return rep;
}

}  // namespace

ConvergenceReport ramadanov_interior(const WeightFamily& fam, const DomainGeometry& d, int kmax,
                                     const PairGrid& grid) {
    for (const auto& pr : grid.pairs) {
        for (const PointRef* p : {&pr.first, &pr.second}) {
            if (p->is_node) throw invalid_input("interior sweep grids must avoid the boundary");
            if (winding_number(d, p->z) != 1 || boundary_distance(d, p->z) < 0.1)
                throw invalid_input("interior sweep points must keep distance >= 0.1");
        }
    }
    return szego_sweep("ramadanov-interior", fam, d, kmax, grid);
}

ConvergenceReport ramadanov_closure(const WeightFamily& fam, const DomainGeometry& d, int kmax,
                                    const PairGrid& grid) {
    for (const auto& pr : grid.pairs) {
        if (pr.first.is_node == pr.second.is_node)
            throw invalid_input(
                "closure grids need exactly one boundary node per pair");
        for (const PointRef* p : {&pr.first, &pr.second}) {
            if (p->is_node) {
                if (p->node >= d.total_nodes())
                    throw invalid_input("boundary node index out of range");
            } else if (winding_number(d, p->z) != 1) {
                throw invalid_input("closure grid interior coordinate is not interior");
            }
        }
    }
    return szego_sweep("ramadanov-closure", fam, d, kmax, grid);
}

ConvergenceReport boundary_point_convergence(const WeightFamily& fam, const DomainGeometry& d,
                                             std::size_t w0_node, const std::vector<cpx>& zgrid,
                                             int kmax) {
    if (w0_node >= d.total_nodes()) throw invalid_input("boundary node index out of range");
    cpx zw = d.z[w0_node];
    for (cpx z : zgrid) {
        if (winding_number(d, z) != 1) throw invalid_input("zgrid point is not interior");
        if (std::abs(z - zw) < 0.2)
            throw invalid_input("zgrid must exclude a radius-0.2 disc around the marked node");
    }
    PairGrid grid;
    grid.grid_id = "boundary-point";
    for (cpx z : zgrid) {
        PointRef a, b;
        a.z = z;
        b.is_node = true;
        b.node = w0_node;
        grid.pairs.emplace_back(a, b);
    }
    return szego_sweep("boundary-point", fam, d, kmax, grid);
}

ConvergenceReport garabedian_convergence(const WeightFamily& fam, const DomainGeometry& d,
                                         int kmax, const PairGrid& grid) {
    check_kmax(kmax);
    if (grid.pairs.empty()) throw invalid_input("empty pair grid");
    for (const auto& pr : grid.pairs) {
        for (const PointRef* p : {&pr.first, &pr.second})
            if (p->is_node || winding_number(d, p->z) != 1)
                throw invalid_input("garabedian sweep pairs must be interior");
        if (std::abs(pr.first.z - pr.second.z) < 1e-6)
            throw invalid_input("garabedian sweep needs distinct evaluation point and pole");
    }
    ConvergenceReport rep;
    rep.kind = "garabedian";
    rep.family_id = fam.family_id;
    rep.grid_id = grid.grid_id;

    LRegularEvaluator linf(d, fam.limit(d));
    std::vector<cpx> ref;
    for (const auto& pr : grid.pairs) ref.push_back(linf.eval(pr.first.z, pr.second.z).value);

    for (int k = 1; k <= kmax; ++k) {
        LRegularEvaluator lk(d, fam.member(d, k));
        double sup = 0.0;
        for (std::size_t j = 0; j < grid.pairs.size(); ++j) {
            cpx v = lk.eval(grid.pairs[j].first.z, grid.pairs[j].second.z).value;
            sup = std::max(sup, std::abs(v - ref[j]));
        }
        rep.ks.push_back(k);
        rep.sup_errors.push_back(sup);
    }
    rep.tail_monotone = tail_is_monotone(rep.sup_errors);
    rep.slope = tail_slope(rep.ks, rep.sup_errors);
    return rep;
}

namespace {

double hausdorff_distance(const std::vector<cpx>& a, const std::vector<cpx>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double h = 0.0;
    for (cpx p : a) {
        double d = std::numeric_limits<double>::infinity();
        for (cpx q : b) d = std::min(d, std::abs(p - q));
        h = std::max(h, d);
    }
    for (cpx q : b) {
        double d = std::numeric_limits<double>::infinity();
        for (cpx p : a) d = std::min(d, std::abs(q - p));
        h = std::max(h, d);
    }
    return h;
}

}  // namespace

ZeroTrackReport zero_tracking(const WeightFamily& fam, const DomainGeometry& d, cpx a, int kmax) {
    check_kmax(kmax);
    if (winding_number(d, a) != 1) throw invalid_input("zero tracking pole must be interior");
    ZeroTrackReport rep;
    rep.family_id = fam.family_id;

    {
        SzegoSolver sinf(d, fam.limit(d));
        const SzegoSolution& sol = sinf.solve(a);
        rep.limit_count = zero_count(sol, d);
        if (rep.limit_count > 0) rep.limit_zeros = zero_locate(sol, d);
    }

    const int expected = d.connectivity() - 1;
    for (int k = 1; k <= kmax; ++k) {
        SzegoSolver sk(d, fam.member(d, k));
        const SzegoSolution& sol = sk.solve(a);
        ZeroTrackRow row;
        row.k = k;
        row.count = zero_count(sol, d);
        if (row.count > 0) row.zeros = zero_locate(sol, d);
        row.hausdorff = hausdorff_distance(row.zeros, rep.limit_zeros);
        rep.rows.push_back(row);
    }
    // first index from which the count equals connectivity-1 for every later k
    rep.k0 = -1;
    for (int i = static_cast<int>(rep.rows.size()) - 1; i >= 0; --i) {
        if (rep.rows[static_cast<std::size_t>(i)].count != expected) break;
        rep.k0 = rep.rows[static_cast<std::size_t>(i)].k;
    }
    return rep;
}

std::vector<ExploratoryRow> exploratory_boundary_pairs(
    const WeightFamily& fam, const DomainGeometry& d, const AhlforsMap& f,
    const std::vector<std::pair<std::size_t, std::size_t>>& node_pairs, int kmax) {
    check_kmax(kmax);
    if (f.domain_id != d.id) throw invalid_input("ahlfors map belongs to a different domain");
    for (const auto& np : node_pairs)
        if (np.first >= d.total_nodes() || np.second >= d.total_nodes())
            throw invalid_input("boundary node index out of range");

    // interpolation nodes: the Ahlfors pole plus the zeros of the unweighted kernel
    std::vector<cpx> anodes{f.a};
    {
        SzegoSolver unit(d, unit_weight(d));
        const SzegoSolution& sol = unit.solve(f.a);
        if (zero_count(sol, d) > 0)
            for (cpx z : zero_locate(sol, d)) anodes.push_back(z);
    }
    const std::size_t m = anodes.size();
    BoundaryField fb = ahlfors_boundary(f, d);

    std::vector<ExploratoryRow> rows;
    for (int k = 1; k <= kmax; ++k) {
        SzegoSolver sk(d, fam.member(d, k));
        Eigen::MatrixXcd M(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) M(i, j) = sk.eval(anodes[i], anodes[j]);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
        for (const auto& np : node_pairs) {
            Eigen::VectorXcd v(m), u(m);
            for (std::size_t j = 0; j < m; ++j) {
                v(j) = sk.solve(anodes[j]).boundary.values[np.first];
                u(j) = std::conj(sk.solve(anodes[j]).boundary.values[np.second]);
            }
            cpx denom = 1.0 - fb.values[np.first] * std::conj(fb.values[np.second]);
            ExploratoryRow row;
            row.k = k;
            row.node1 = np.first;
            row.node2 = np.second;
            row.denom_abs = std::abs(denom);
            cpx num = (v.transpose() * lu.solve(u)).value();
            row.value = row.denom_abs > 1e-10 ? num / denom : cpx(0.0, 0.0);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace szg

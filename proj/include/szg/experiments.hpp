#ifndef SZG_EXPERIMENTS_HPP
#define SZG_EXPERIMENTS_HPP

#include <string>
#include <utility>
#include <vector>

#include "szg/bergman.hpp"
#include "szg/kernels.hpp"

namespace szg {

// phi_k -> 1 weight sequences used by the convergence studies.
//   exp-cos:        phi_k = exp(cos(t)/k) on one component, 1 elsewhere
//   poly-abs2:      phi_k = |zeta - 2|^(2/k)
//   constant-blend: phi_k = 1 + 1/k  (exact homogeneity calibration)
struct WeightFamily {
    std::string family_id;
    int component = 0;
    WeightField member(const DomainGeometry& d, int k) const;
    WeightField limit(const DomainGeometry& d) const;
};

WeightFamily make_family(const std::string& id, int component = 0);

// Evaluation site: an interior point or a boundary node index.
struct PointRef {
    bool is_node = false;
    cpx z{};
    std::size_t node = 0;
};

struct PairGrid {
    std::string grid_id;
    std::vector<std::pair<PointRef, PointRef>> pairs;
};

struct ConvergenceReport {
    std::string kind;
    std::string family_id;
    std::string grid_id;
    std::vector<int> ks;
    std::vector<double> sup_errors;
    bool tail_monotone = false;  // nonincreasing for k >= kmax/2
    double slope = 0.0;          // log-log tail slope diagnostic
};

// deterministic interior points walked in from the outer boundary
std::vector<cpx> default_interior_points(const DomainGeometry& d, int count, double min_bd = 0.1);
PairGrid default_interior_grid(const DomainGeometry& d, int npairs);
PairGrid default_closure_grid(const DomainGeometry& d, int npairs);
std::vector<cpx> default_boundary_point_zgrid(const DomainGeometry& d, std::size_t w0_node,
                                              int count);

// sup over interior pairs of |S_{phi_k}(z,w) - S_{phi_inf}(z,w)|
ConvergenceReport ramadanov_interior(const WeightFamily& fam, const DomainGeometry& d, int kmax,
                                     const PairGrid& grid);

// pairs may put one coordinate on a boundary node; the boundary-argument
// value is read from the solve with the interior coordinate as pole
ConvergenceReport ramadanov_closure(const WeightFamily& fam, const DomainGeometry& d, int kmax,
                                    const PairGrid& grid);

// S_{phi_k}(z, w0) -> S(z, w0) for a fixed boundary node w0, z away from w0
ConvergenceReport boundary_point_convergence(const WeightFamily& fam, const DomainGeometry& d,
                                             std::size_t w0_node, const std::vector<cpx>& zgrid,
                                             int kmax);

// sup over pairs of |l_{phi_k}(z,a) - l_{phi_inf}(z,a)|
ConvergenceReport garabedian_convergence(const WeightFamily& fam, const DomainGeometry& d,
                                         int kmax, const PairGrid& grid);

struct ZeroTrackRow {
    int k = 0;
    int count = 0;
    std::vector<cpx> zeros;
    double hausdorff = 0.0;  // distance to the limit zero set
};

struct ZeroTrackReport {
    std::string family_id;
    int limit_count = 0;
    std::vector<cpx> limit_zeros;
    std::vector<ZeroTrackRow> rows;
    int k0 = -1;  // first k from which count stays at connectivity-1
};

ZeroTrackReport zero_tracking(const WeightFamily& fam, const DomainGeometry& d, cpx a, int kmax);

// Exploratory only (recorded, never asserted): both arguments on the
// boundary, evaluated through the rational interpolation identity.
struct ExploratoryRow {
    int k = 0;
    std::size_t node1 = 0, node2 = 0;
    cpx value{};
    double denom_abs = 0.0;
};

std::vector<ExploratoryRow> exploratory_boundary_pairs(
    const WeightFamily& fam, const DomainGeometry& d, const AhlforsMap& f,
    const std::vector<std::pair<std::size_t, std::size_t>>& node_pairs, int kmax);

}  // namespace szg

#endif

#ifndef SZG_GEOMETRY_HPP
#define SZG_GEOMETRY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "szg/types.hpp"

namespace szg {

// One smooth closed boundary curve, sampled at equispaced parameter nodes
// t_i = 2pi i / N. dz and ddz are the analytic parameter derivatives of the
// preset curve (never finite-differenced).
struct CurveComponent {
    std::vector<double> t;
    std::vector<cpx> z;
    std::vector<cpx> dz;
    std::vector<cpx> ddz;
    int orientation = +1;  // +1 outer curve, -1 hole
};

// Sampled n-connected domain. Component 0 is the outer curve (positive
// orientation); components 1..n-1 are holes (negative orientation), so the
// concatenation of all components is the positively oriented boundary.
// Flat per-node tables are kept alongside the components for the solvers.
struct DomainGeometry {
    std::string preset;
    std::vector<double> params;
    std::vector<CurveComponent> components;

    // flat tables over all nodes, component-major
    std::vector<cpx> z;
    std::vector<cpx> dz;
    std::vector<cpx> tangent;   // dz/|dz|
    std::vector<double> absdz;  // |dz|
    std::vector<double> qnode;  // |dz| * (2pi/N_c) -- unweighted quadrature weight
    std::vector<int> comp_of;
    std::vector<std::size_t> comp_begin;  // size n+1

    std::uint64_t id = 0;  // identity tag; fields refuse to mix domains

    std::size_t total_nodes() const { return z.size(); }
    int connectivity() const { return static_cast<int>(components.size()); }
    double scale() const;             // max |z| over nodes
    double max_node_spacing() const;  // max |dz_i| * h_c
};

// name in {disc, ellipse, smooth-star, annulus, circle-holes}; params may be
// empty (preset defaults). nodes_per_component must be even and >= 16.
DomainGeometry make_preset(const std::string& name, const std::vector<double>& params,
                           int nodes_per_component);

// Discrete winding number of the node polygon around p, summed over
// components; equals 1 iff p lies in the domain. Throws invalid_input when p
// is within 1e-9 of a boundary node.
int winding_number(const DomainGeometry& d, cpx p);

// Node-resolution distance to the boundary: min_i |p - z_i|.
double boundary_distance(const DomainGeometry& d, cpx p);

inline bool contains(const DomainGeometry& d, cpx p) { return winding_number(d, p) == 1; }

// atan2-based winding of one component's node loop around p (the direct
// total-argument-change definition); used as a cross-check of the crossing
// counter and by the zero counter on arbitrary sample loops.
int argument_winding(const std::vector<cpx>& loop, cpx p);

}  // namespace szg

#endif

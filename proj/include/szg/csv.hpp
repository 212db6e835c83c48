#ifndef SZG_CSV_HPP
#define SZG_CSV_HPP

#include <string>
#include <utility>
#include <vector>

#include "szg/experiments.hpp"
#include "szg/field.hpp"

namespace szg {

// full-precision scalar formatting shared by every CSV writer
std::string fmt17(double x);
std::string format_complex(cpx z);  // "a+bi", for manifests and logs

// one row per node: component,node,t,<two columns per field>
std::string csv_boundary_multi(const DomainGeometry& d,
                               const std::vector<const BoundaryField*>& fields,
                               const std::vector<std::string>& colnames);
std::string csv_weight(const DomainGeometry& d, const WeightField& w);
std::string csv_zeros(const std::vector<cpx>& zeros, const std::vector<double>& abs_s);
std::string csv_converge(const ConvergenceReport& rep);
std::string csv_zero_track(const ZeroTrackReport& rep);
std::string csv_exploratory(const std::vector<ExploratoryRow>& rows);

struct KernelRow {
    cpx z, w, value;
};
std::string csv_kernel_rows(const std::vector<KernelRow>& rows);

// header re_z,im_z[,re_w,im_w]; missing w columns read as 0
std::vector<std::pair<cpx, cpx>> read_points_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace szg

#endif

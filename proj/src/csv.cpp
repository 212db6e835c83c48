#include "szg/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace szg {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(cpx z) {
    std::string s = fmt17(z.real());
    s += z.imag() < 0 ? "-" : "+";
    s += fmt17(std::abs(z.imag()));
    s += "i";
    return s;
}

std::string csv_boundary_multi(const DomainGeometry& d,
                               const std::vector<const BoundaryField*>& fields,
                               const std::vector<std::string>& colnames) {
    if (colnames.size() != 2 * fields.size())
        throw invalid_input("csv writer needs two column names per field");
    for (const BoundaryField* f : fields)
        if (f->domain_id != d.id || f->values.size() != d.total_nodes())
            throw invalid_input("boundary field does not match the domain");
    std::string out = "component,node,t";
    for (const std::string& c : colnames) out += "," + c;
    out += "\n";
    std::size_t idx = 0;
    for (std::size_t c = 0; c < d.components.size(); ++c) {
        const CurveComponent& comp = d.components[c];
        for (std::size_t j = 0; j < comp.z.size(); ++j, ++idx) {
            out += std::to_string(c) + "," + std::to_string(j) + "," + fmt17(comp.t[j]);
            for (const BoundaryField* f : fields) {
                out += "," + fmt17(f->values[idx].real());
                out += "," + fmt17(f->values[idx].imag());
            }
            out += "\n";
        }
    }
    return out;
}

std::string csv_weight(const DomainGeometry& d, const WeightField& w) {
    if (w.domain_id != d.id) throw invalid_input("weight does not match the domain");
    std::string out = "component,node,t,phi,dinv_ds\n";
    std::size_t idx = 0;
    for (std::size_t c = 0; c < d.components.size(); ++c) {
        const CurveComponent& comp = d.components[c];
        for (std::size_t j = 0; j < comp.z.size(); ++j, ++idx) {
            out += std::to_string(c) + "," + std::to_string(j) + "," + fmt17(comp.t[j]) + "," +
                   fmt17(w.phi[idx]) + "," + fmt17(w.dinv_ds[idx]) + "\n";
        }
    }
    return out;
}

std::string csv_zeros(const std::vector<cpx>& zeros, const std::vector<double>& abs_s) {
    if (zeros.size() != abs_s.size()) throw invalid_input("zero list and residual list differ");
    std::string out = "re,im,abs_S\n";
    for (std::size_t i = 0; i < zeros.size(); ++i)
        out += fmt17(zeros[i].real()) + "," + fmt17(zeros[i].imag()) + "," + fmt17(abs_s[i]) +
               "\n";
    return out;
}

std::string csv_converge(const ConvergenceReport& rep) {
    std::string out = "k,sup_error,grid_id\n";
    for (std::size_t i = 0; i < rep.ks.size(); ++i)
        out += std::to_string(rep.ks[i]) + "," + fmt17(rep.sup_errors[i]) + "," + rep.grid_id +
               "\n";
    return out;
}

std::string csv_zero_track(const ZeroTrackReport& rep) {
    std::string out = "k,count,hausdorff\n";
    for (const ZeroTrackRow& row : rep.rows)
        out += std::to_string(row.k) + "," + std::to_string(row.count) + "," +
               fmt17(row.hausdorff) + "\n";
    return out;
}

std::string csv_exploratory(const std::vector<ExploratoryRow>& rows) {
    std::string out = "k,node1,node2,re,im,denom_abs\n";
    for (const ExploratoryRow& r : rows)
        out += std::to_string(r.k) + "," + std::to_string(r.node1) + "," +
               std::to_string(r.node2) + "," + fmt17(r.value.real()) + "," +
               fmt17(r.value.imag()) + "," + fmt17(r.denom_abs) + "\n";
    return out;
}

std::string csv_kernel_rows(const std::vector<KernelRow>& rows) {
    std::string out = "re_z,im_z,re_w,im_w,re_K,im_K\n";
    for (const KernelRow& r : rows)
        out += fmt17(r.z.real()) + "," + fmt17(r.z.imag()) + "," + fmt17(r.w.real()) + "," +
               fmt17(r.w.imag()) + "," + fmt17(r.value.real()) + "," + fmt17(r.value.imag()) +
               "\n";
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    cells.push_back(cur);
    return cells;
}

double cell_to_double(const std::string& s, const std::string& path) {
    const char* p = s.c_str();
    char* end = nullptr;
    double v = std::strtod(p, &end);
    if (end == p || *end != '\0') throw io_error("bad numeric cell '" + s + "' in " + path);
    return v;
}

}  // namespace

std::vector<std::pair<cpx, cpx>> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open points file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw io_error("empty points file: " + path);
    std::vector<std::string> cols = split_csv_line(header);
    auto col_of = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return static_cast<int>(i);
        return -1;
    };
    int rz = col_of("re_z"), iz = col_of("im_z"), rw = col_of("re_w"), iw = col_of("im_w");
    if (rz < 0 || iz < 0) throw io_error("points file needs re_z,im_z columns: " + path);
    std::vector<std::pair<cpx, cpx>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> cells = split_csv_line(line);
        auto get = [&](int c) {
            if (c < 0) return 0.0;
            if (static_cast<std::size_t>(c) >= cells.size())
                throw io_error("short row in points file: " + path);
            return cell_to_double(cells[static_cast<std::size_t>(c)], path);
        };
        out.emplace_back(cpx(get(rz), get(iz)), cpx(get(rw), get(iw)));
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw io_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace szg

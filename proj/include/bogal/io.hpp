#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bogal {

/// Shortest round-trip-exact decimal form, locale-independent.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Solution snapshot: header `x,u`, one sample per row.
inline void write_snapshot_csv(const std::string& path,
                               const std::vector<double>& xs,
                               const std::vector<double>& us) {
    if (xs.size() != us.size())
        throw std::invalid_argument("snapshot: coordinate/value size mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "x,u\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << format_double(xs[i]) << ',' << format_double(us[i]) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

/// Dense matrix dump: header `row,col,value`, row-major order.
inline void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "row,col,value\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << i << ',' << j << ',' << format_double(m(i, j)) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

/// Nodal initial data as consumed by `run --problem custom-initial`:
/// header `x,u,du`, one row per mesh node in ascending order.
struct NodalInitialData {
    std::vector<double> x, u, du;
};

inline NodalInitialData read_nodal_initial_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    NodalInitialData data;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        double x, u, du;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &u, &du) == 3) {
            data.x.push_back(x);
            data.u.push_back(u);
            data.du.push_back(du);
        } else if (!saw_header) {
            saw_header = true;  // tolerate exactly one non-numeric header line
        } else {
            throw std::runtime_error("malformed initial-data row: " + line);
        }
    }
    if (data.x.empty())
        throw std::runtime_error("initial-data file holds no samples: " + path);
    return data;
}

}  // namespace bogal

// csv.hpp: locale-independent CSV payloads with 17 significant digits

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "dicat/core/states.hpp"
#include "dicat/exact/quench.hpp"
#include "dicat/field/angular.hpp"
#include "dicat/field/instanton.hpp"
#include "dicat/tomography/wigner.hpp"

namespace dicat::io {

inline std::string fmt(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
    if (b < e && *b == '+') ++b;
    const auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e) throw ConfigError("not a number: '" + s + "'");
    return v;
}

class Csv {
public:
    explicit Csv(const std::vector<std::string>& header) {
        for (std::size_t i = 0; i < header.size(); ++i) out_ += (i ? "," : "") + header[i];
        out_ += '\n';
    }

    Csv& row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) out_ += ',';
            out_ += fmt(v);
            first = false;
        }
        out_ += '\n';
        return *this;
    }

    [[nodiscard]] const std::string& str() const { return out_; }

private:
    std::string out_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path.string());
    f << content;
    if (!f) throw Error("write failed for " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline std::string wigner_csv(const WignerField& w) {
    Csv c({"x", "p", "W"});
    for (Eigen::Index i = 0; i < w.x_grid.size(); ++i)
        for (Eigen::Index j = 0; j < w.p_grid.size(); ++j) c.row({w.x_grid[i], w.p_grid[j], w.values(i, j)});
    return c.str();
}

inline std::string density_csv(const DensityMatrix& rho) {
    Csv c({"n", "m", "re", "im"});
    for (Eigen::Index n = 0; n < rho.dim(); ++n)
        for (Eigen::Index m = 0; m < rho.dim(); ++m)
            c.row({static_cast<double>(n), static_cast<double>(m), rho.entries(n, m).real(), rho.entries(n, m).imag()});
    return c.str();
}

/// Inverse of density_csv.
inline DensityMatrix parse_density_csv(const std::string& text) {
    std::vector<std::array<double, 4>> rows;
    std::size_t pos = text.find('\n');
    if (pos == std::string::npos || text.substr(0, pos) != "n,m,re,im")
        throw ConfigError("density-matrix CSV must start with the header n,m,re,im");
    int dim = 0;
    while (++pos < text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string line = text.substr(pos, end - pos);
        pos = end;
        if (line.empty()) continue;
        std::array<double, 4> v{};
        std::size_t a = 0;
        for (int k = 0; k < 4; ++k) {
            const std::size_t b = k < 3 ? line.find(',', a) : line.size();
            if (b == std::string::npos) throw ConfigError("malformed density-matrix row: " + line);
            v[static_cast<std::size_t>(k)] = parse_double(line.substr(a, b - a));
            a = b + 1;
        }
        dim = std::max(dim, static_cast<int>(std::max(v[0], v[1])) + 1);
        rows.push_back(v);
    }
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto& v : rows) m(static_cast<Eigen::Index>(v[0]), static_cast<Eigen::Index>(v[1])) = cplx(v[2], v[3]);
    return DensityMatrix(m);
}

inline std::string quench_csv(const QuenchTrace& q) {
    Csv c({"t", "n_photon", "P_plus", "P_minus", "fidelity"});
    for (Eigen::Index k = 0; k < q.times.size(); ++k)
        c.row({q.times[k], q.photon_number[k], q.parity_plus[k], q.parity_minus[k], q.fidelity[k]});
    return c.str();
}

inline std::string marginal_csv(const RealVector& x, const RealVector& t, const RealMatrix& w) {
    Csv c({"x", "t", "w"});
    for (Eigen::Index k = 0; k < t.size(); ++k)
        for (Eigen::Index i = 0; i < x.size(); ++i) c.row({x[i], t[k], w(i, k)});
    return c.str();
}

inline std::string profile_csv(const FreeEnergyProfile& p) {
    Csv c({"u", "F"});
    for (Eigen::Index i = 0; i < p.u_grid.size(); ++i) c.row({p.u_grid[i], p.values[i]});
    return c.str();
}

inline std::string surface_csv(const AngularSurface& s) {
    Csv c({"u", "phi", "h", "F_mf", "F_fl", "stable"});
    for (Eigen::Index i = 0; i < s.u_grid.size(); ++i)
        for (Eigen::Index j = 0; j < s.phi_grid.size(); ++j)
            c.row({s.u_grid[i], s.phi_grid[j], s.h_values(i, j), s.f_mf_values(i, j), s.fluct_values(i, j),
                   s.stability_mask(i, j) ? 1.0 : 0.0});
    return c.str();
}

inline std::string instanton_csv(const InstantonSolution& s) {
    Csv c({"tau", "u"});
    for (Eigen::Index i = 0; i < s.tau_grid.size(); ++i) c.row({s.tau_grid[i], s.u_of_tau[i]});
    return c.str();
}

} // namespace dicat::io

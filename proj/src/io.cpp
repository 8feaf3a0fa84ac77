#include "polysinc/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace polysinc {

std::string format_real(double v) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.16e", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string grid_csv(const Eigen::MatrixXd& values, double x_min, double x_max, double y_min,
                     double y_max) {
    std::string out = "nx,ny,x_min,x_max,y_min,y_max\n";
    out += std::to_string(values.rows()) + ',' + std::to_string(values.cols()) + ',' +
           format_real(x_min) + ',' + format_real(x_max) + ',' + format_real(y_min) + ',' +
           format_real(y_max) + '\n';
    for (Eigen::Index p = 0; p < values.rows(); ++p) {
        for (Eigen::Index q = 0; q < values.cols(); ++q) {
            if (q) out += ',';
            out += format_real(values(p, q));
        }
        out += '\n';
    }
    return out;
}

}  // namespace polysinc

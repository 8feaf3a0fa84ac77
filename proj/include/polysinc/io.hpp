#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace polysinc {

/// Fixed 17-significant-digit scientific rendering ("%.16e").
std::string format_real(double v);

/// Writes via a sibling temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Uniform-lattice grid document:
///   nx,ny,x_min,x_max,y_min,y_max
///   <header values>
///   one line per x index with ny comma-separated values
std::string grid_csv(const Eigen::MatrixXd& values, double x_min, double x_max, double y_min,
                     double y_max);

}  // namespace polysinc

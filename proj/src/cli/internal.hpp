#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace dexkin::cli {

/// Bad flags or unreadable input: exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);
/// Comma and/or whitespace separated doubles.
std::vector<double> parse_number_list(std::string_view text, const std::string& what);

std::string sha256_hex(std::string_view data);

struct FileDigest {
  std::string path;
  std::string sha256;
};

struct Manifest {
  std::string command;
  std::string version;
  std::vector<std::string> argv;  // without --out
  std::string parameters_json;    // resolved parameters, serialized
  std::optional<std::uint64_t> seed;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;  // file names relative to the output directory
};

std::string manifest_json(const Manifest& m);
Manifest parse_manifest(std::string_view text);

/// Scatter plot of three orthographic projections (x-y, x-z, y-z), coordinates in mm.
std::string scatter_svg(const std::vector<Eigen::Vector3d>& points, const std::string& title);

}  // namespace dexkin::cli

#include "degen/xyz_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace degen {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_xyz(std::ostream& out, const PointCloud& cloud) {
  const std::size_t d = cloud.dim();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud[i];
    for (std::size_t j = 0; j < d; ++j) {
      if (j > 0) out << ' ';
      out << format_double(p[j]);
    }
    out << '\n';
  }
}

void write_xyz_file(const std::string& path, const PointCloud& cloud) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_xyz(out, cloud);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

PointCloud read_xyz(std::istream& in) {
  std::vector<double> flat;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;

    std::size_t fields = 0;
    while (pos < line.size()) {
      std::size_t end = line.find_first_of(" \t\r", pos);
      if (end == std::string::npos) end = line.size();
      double value;
      const auto res = std::from_chars(line.data() + pos, line.data() + end, value);
      if (res.ec != std::errc() || res.ptr != line.data() + end ||
          !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "malformed coordinate on line " << line_no << ": '"
            << line.substr(pos, end - pos) << "'";
        throw IoError(msg.str());
      }
      flat.push_back(value);
      ++fields;
      pos = line.find_first_not_of(" \t\r", end);
      if (pos == std::string::npos) break;
    }

    if (dim == 0) {
      dim = fields;
    } else if (fields != dim) {
      std::ostringstream msg;
      msg << "line " << line_no << " has " << fields << " coordinates, expected "
          << dim;
      throw IoError(msg.str());
    }
  }
  if (dim == 0) throw IoError("point file contains no data lines");
  return PointCloud(dim, std::move(flat));
}

PointCloud read_xyz_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  return read_xyz(in);
}

}  // namespace degen

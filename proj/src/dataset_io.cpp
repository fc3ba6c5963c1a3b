#include "srcloc/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace srcloc {

namespace {

std::string line_msg(const char* what, int line_no) {
  return std::string(what) + " (line " + std::to_string(line_no) + ")";
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

void write_dataset(std::ostream& out, const BinaryDataSet& data) {
  out << data.sample_count() << ' ' << data.sensor_count() << '\n';
  for (int t = 0; t < data.sample_count(); ++t) {
    for (int n = 0; n < data.sensor_count(); ++n) {
      if (n > 0) out << ' ';
      out << static_cast<int>(data.at(t, n));
    }
    out << '\n';
  }
}

void write_dataset(const std::filesystem::path& path, const BinaryDataSet& data) {
  auto out = open_output(path);
  write_dataset(out, data);
}

BinaryDataSet read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("dataset file: empty input");
  int m = 0, n = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> m >> n) || (header >> extra)) {
      throw std::invalid_argument(line_msg("dataset file: header must be \"M N\"", 1));
    }
  }
  if (m < 1 || n < 1) throw std::invalid_argument(line_msg("dataset file: M and N must be >= 1", 1));

  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(m) * n);
  for (int t = 0; t < m; ++t) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument(line_msg("dataset file: missing sample row", t + 2));
    }
    std::istringstream row(line);
    for (int i = 0; i < n; ++i) {
      int v = -1;
      if (!(row >> v) || (v != 0 && v != 1)) {
        throw std::invalid_argument(line_msg("dataset file: entries must be 0 or 1", t + 2));
      }
      bits.push_back(static_cast<std::uint8_t>(v));
    }
    std::string extra;
    if (row >> extra) {
      throw std::invalid_argument(line_msg("dataset file: too many entries in row", t + 2));
    }
  }
  return BinaryDataSet(m, n, std::move(bits));
}

BinaryDataSet read_dataset(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_dataset(in);
}

void write_field(std::ostream& out, const SensorField& field) {
  out << field.size() << '\n';
  char buf[64];
  for (int i = 0; i < field.size(); ++i) {
    const Point p = field.position(i);
    std::snprintf(buf, sizeof buf, "%.6f %.6f", p.x, p.y);
    out << buf << '\n';
  }
}

void write_field(const std::filesystem::path& path, const SensorField& field) {
  auto out = open_output(path);
  write_field(out, field);
}

SensorField read_field(std::istream& in, const AreaBounds& bounds) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("field file: empty input");
  int n = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n) || (header >> extra)) {
      throw std::invalid_argument(line_msg("field file: header must be \"N\"", 1));
    }
  }
  if (n < 1) throw std::invalid_argument(line_msg("field file: N must be >= 1", 1));

  std::vector<Point> positions;
  positions.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument(line_msg("field file: missing position row", i + 2));
    }
    std::istringstream row(line);
    Point p;
    std::string extra;
    if (!(row >> p.x >> p.y) || (row >> extra)) {
      throw std::invalid_argument(line_msg("field file: rows must be \"x y\"", i + 2));
    }
    positions.push_back(p);
  }
  return SensorField(std::move(positions), bounds);
}

SensorField read_field(const std::filesystem::path& path, const AreaBounds& bounds) {
  auto in = open_input(path);
  return read_field(in, bounds);
}

void write_collection(std::ostream& out, const std::vector<std::vector<int>>& subsets) {
  for (const auto& subset : subsets) {
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (i > 0) out << ' ';
      out << subset[i];
    }
    out << '\n';
  }
}

void write_collection(const std::filesystem::path& path,
                      const std::vector<std::vector<int>>& subsets) {
  auto out = open_output(path);
  write_collection(out, subsets);
}

std::vector<std::vector<int>> read_collection(std::istream& in) {
  std::vector<std::vector<int>> subsets;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::vector<int> subset;
    int v = 0;
    while (row >> v) {
      if (v < 0) throw std::invalid_argument(line_msg("collection file: indices must be >= 0", line_no));
      subset.push_back(v);
    }
    if (!row.eof()) {
      throw std::invalid_argument(line_msg("collection file: non-integer token", line_no));
    }
    if (!subset.empty()) subsets.push_back(std::move(subset));
  }
  return subsets;
}

std::vector<std::vector<int>> read_collection(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_collection(in);
}

}  // namespace srcloc

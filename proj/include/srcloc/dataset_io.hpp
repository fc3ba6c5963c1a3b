#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "srcloc/sim.hpp"

namespace srcloc {

/// Dataset file: line 1 is "M N", then M lines of N space-separated 0/1
/// digits. Parse errors raise std::invalid_argument naming the line.
void write_dataset(std::ostream& out, const BinaryDataSet& data);
void write_dataset(const std::filesystem::path& path, const BinaryDataSet& data);
BinaryDataSet read_dataset(std::istream& in);
BinaryDataSet read_dataset(const std::filesystem::path& path);

/// Field file: line 1 is "N", then N lines of "x y" with six fractional
/// digits. The deployment area is not stored, so loading takes it as an
/// argument and validates every position against it.
void write_field(std::ostream& out, const SensorField& field);
void write_field(const std::filesystem::path& path, const SensorField& field);
SensorField read_field(std::istream& in, const AreaBounds& bounds);
SensorField read_field(const std::filesystem::path& path, const AreaBounds& bounds);

/// Subset-collection dump for solver debugging: one subset per line as
/// space-separated sensor indices.
void write_collection(std::ostream& out, const std::vector<std::vector<int>>& subsets);
void write_collection(const std::filesystem::path& path,
                      const std::vector<std::vector<int>>& subsets);
std::vector<std::vector<int>> read_collection(std::istream& in);
std::vector<std::vector<int>> read_collection(const std::filesystem::path& path);

}  // namespace srcloc

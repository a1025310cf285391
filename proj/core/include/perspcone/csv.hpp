#ifndef PERSPCONE_CSV_HPP
#define PERSPCONE_CSV_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace perspcone {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Doubles are written with 17 significant digits so every value round-trips
// bit-for-bit through the file.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const; // -1 when absent
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);

} // namespace perspcone

#endif

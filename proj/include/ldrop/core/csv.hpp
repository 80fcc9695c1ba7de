#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ldrop {

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

// RFC-4180 field quoting.
std::string csv_field(const std::string& s);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

}  // namespace ldrop

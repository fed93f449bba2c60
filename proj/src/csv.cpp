#include "tscarma/csv.hpp"

#include <charconv>
#include <cmath>

namespace tscarma::csv {

std::string format(double x, int significant) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

void write_row(std::ostream& os, const std::vector<double>& values, int significant) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format(values[i], significant);
  }
  os << '\n';
}

}  // namespace tscarma::csv

#pragma once

// Locale-independent number formatting for CSV output.

#include <ostream>
#include <string>
#include <vector>

namespace tscarma::csv {

/// Shortest %g-style rendering with the given significant digits.
std::string format(double x, int significant = 17);

void write_row(std::ostream& os, const std::vector<double>& values, int significant = 17);

}  // namespace tscarma::csv

#include "qdeco/csv.hpp"

#include <cmath>
#include <cstdio>

#include "qdeco/errors.hpp"

namespace qdeco {

std::string csv_double(double value) {
  if (!std::isfinite(value))
    throw NumericalError("non_finite_output: refusing to write NaN/Inf");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace qdeco

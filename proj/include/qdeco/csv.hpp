// CSV numeric formatting: full double precision, finite values only.
#pragma once

#include <string>

namespace qdeco {

/// 17-significant-digit representation. Throws
/// NumericalError("non_finite_output") for NaN or infinity.
std::string csv_double(double value);

}  // namespace qdeco

#ifndef REINHARDT_FORMAT_HPP_
#define REINHARDT_FORMAT_HPP_

#include <string>

namespace reinhardt {

/// Shortest round-trip decimal form; infinities print as "inf" / "-inf".
std::string format_number(double x);

}  // namespace reinhardt

#endif  // REINHARDT_FORMAT_HPP_

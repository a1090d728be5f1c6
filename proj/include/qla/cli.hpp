#pragma once

#include <iostream>

namespace qla::cli {

// Runs one qla command line. Returns 0 on success, 1 on a validation or
// model error, 2 on a usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace qla::cli

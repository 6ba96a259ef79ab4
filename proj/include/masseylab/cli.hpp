#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace masseylab {

// Drives the full command surface (validate / cohomology / massey / scan /
// ideal-scan / model / export) against the given streams. `args` excludes the
// program name. Returns 0 on success, 1 on computation-domain errors
// (undefined products, invalid algebras), 2 on parse or usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace masseylab

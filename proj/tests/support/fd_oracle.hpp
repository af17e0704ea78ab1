#pragma once

#include <functional>
#include <vector>

#include "specbound/numerics.hpp"

// Independent eigenvalue oracle: second-order central finite differences for
// -u'' - W u on the grid interior with Dirichlet ends, eigenvalues of the
// resulting tridiagonal matrix located by Sturm-sequence bisection.  Shares
// no code path with the shooting solver, so agreement is meaningful.
namespace testsupport {

// The k lowest eigenvalues (k = 1-based count) below `ceiling`.  Levels that
// would cross the ceiling are omitted, so the result may be shorter than
// `levels`.
std::vector<double> fd_levels(const specbound::Grid& grid,
                              const std::function<double(double)>& well, int levels,
                              double ceiling = -1e-9);

}  // namespace testsupport

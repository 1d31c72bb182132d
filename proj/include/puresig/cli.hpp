#pragma once

#include <iosfwd>

namespace puresig {

/// Entry point of the `puresig` command. Exit status: 0 on success, 2 when
/// an invariant verdict fails, 1 on usage or resource errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace puresig

#pragma once

#include <iosfwd>

namespace eeinv {

/// Exit codes: 0 ok, 1 verdict failure, 2 usage, parse or IO error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eeinv

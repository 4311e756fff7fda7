#pragma once

#include <iosfwd>

namespace divuq {

/// Entry point of the `divuq` tool. Returns 0 on success, 1 on usage errors,
/// 2 on data or I/O errors. Diagnostics go to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace divuq

#pragma once
// cli.hpp - command-line front end. Kept as a library entry point so the
// whole dispatch (parsing, formatting, exit codes) is testable in-process;
// the fk binary is a thin wrapper around run().

#include <iosfwd>
#include <string>
#include <vector>

#include "fk/arith.hpp"

namespace fk::cli {

// Runs one subcommand. `args` excludes the program name. Returns 0 on
// success, 1 on domain errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Threshold parser for --x style flags: plain decimal ("123"), power form
// ("10^100"), or decimal with a fractional tail ("123.75"), which is
// floored since every result depends on x only through floor(x/i).
BigNat parse_threshold(const std::string& text);

} // namespace fk::cli

#pragma once

#include <ostream>

namespace fracwave {

/// Entry point of the `fracwave` command. Exit codes: 0 success, 1 usage or
/// configuration error, 2 numerical failure.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fracwave

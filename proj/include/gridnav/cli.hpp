#pragma once

namespace gridnav::cli {

/// Entry point of the gridnav tool. Exit codes: 0 success, 2 usage/config or
/// input errors, 3 no goal-reaching path.
int run(int argc, char** argv);

}  // namespace gridnav::cli

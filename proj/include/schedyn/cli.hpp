#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schedyn {

// Run the command-line tool on `args` (argv without the program name),
// writing to the given streams. Returns the process exit code:
//   0 success / all checks pass
//   1 a claim or structure check failed
//   2 usage error or schedule syntax error
//   3 semantic error (overlap/gap/domain/unsupported/mode mismatch,
//     unknown id, invalid index)
//   4 I/O error
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace schedyn

#ifndef HAMMERSTEIN_CLI_HPP_
#define HAMMERSTEIN_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hammer::cli {

// Exit status of a command.
enum Status { Ok = 0, Failed = 1, BadInput = 2 };

// Runs `hammerstein <args...>`; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

std::vector<std::string> shipped_names();
// Config text of a shipped example; empty when unknown.
std::string shipped_config(const std::string& name);

}  // namespace hammer::cli

#endif  // HAMMERSTEIN_CLI_HPP_

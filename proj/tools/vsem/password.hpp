#pragma once

#include <optional>
#include <string>

namespace vsem::cli {

/// Where a password comes from. Never argv.
struct PasswordSource {
  std::string env_var;
  std::string file;
};

/// Environment variable, then file (first line), then an interactive
/// prompt on the controlling terminal with echo disabled. Without a
/// terminal, one line is read from standard input.
std::string read_password(const PasswordSource& source, const std::string& prompt);

}  // namespace vsem::cli

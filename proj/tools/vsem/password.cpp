#include "password.hpp"

#include <termios.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "vsem/error.hpp"

namespace vsem::cli {

namespace {

void strip_newline(std::string& s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
}

std::string prompt_tty(const std::string& prompt) {
  std::FILE* tty = std::fopen("/dev/tty", "r+");
  if (tty == nullptr) {
    std::string line;
    if (!std::getline(std::cin, line)) {
      throw IoError("no password source: set --password-env or --password-file");
    }
    strip_newline(line);
    return line;
  }
  const int fd = fileno(tty);
  termios saved{};
  const bool have_termios = tcgetattr(fd, &saved) == 0;
  if (have_termios) {
    termios quiet = saved;
    quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
    tcsetattr(fd, TCSAFLUSH, &quiet);
  }
  std::fputs(prompt.c_str(), tty);
  std::fflush(tty);
  std::string line;
  for (int c = std::fgetc(tty); c != EOF && c != '\n'; c = std::fgetc(tty)) {
    line.push_back(static_cast<char>(c));
  }
  if (have_termios) tcsetattr(fd, TCSAFLUSH, &saved);
  std::fputs("\n", tty);
  std::fclose(tty);
  strip_newline(line);
  return line;
}

}  // namespace

std::string read_password(const PasswordSource& source, const std::string& prompt) {
  if (!source.env_var.empty()) {
    const char* value = std::getenv(source.env_var.c_str());
    if (value == nullptr) {
      throw IoError("environment variable " + source.env_var + " is not set");
    }
    return value;
  }
  if (!source.file.empty()) {
    std::ifstream in(source.file);
    if (!in) throw IoError("cannot read password file " + source.file);
    std::string line;
    std::getline(in, line);
    strip_newline(line);
    return line;
  }
  return prompt_tty(prompt);
}

}  // namespace vsem::cli

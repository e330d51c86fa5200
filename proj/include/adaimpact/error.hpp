#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace adaimpact {

/// Base class for every error raised by the library. The CLI maps all of
/// these to the "input error" exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(std::string path, int line, const std::string &message)
      : Error(path + ":" + std::to_string(line) + ": " + message),
        path_(std::move(path)), line_(line) {}

  const std::string &path() const { return path_; }
  int line() const { return line_; }

private:
  std::string path_;
  int line_;
};

/// Raised by parse_tree/parse_sources; carries every failing unit, not only
/// the first one.
class TreeParseError : public Error {
public:
  explicit TreeParseError(std::vector<std::string> messages)
      : Error(join(messages)), messages_(std::move(messages)) {}

  const std::vector<std::string> &messages() const { return messages_; }

private:
  static std::string join(const std::vector<std::string> &messages) {
    std::string out = std::to_string(messages.size()) + " unit(s) failed to parse";
    for (const auto &m : messages)
      out += "\n  " + m;
    return out;
  }
  std::vector<std::string> messages_;
};

class FormatError : public Error {
public:
  using Error::Error;
};

class VersionMismatchError : public FormatError {
public:
  using FormatError::FormatError;
};

class HashAlgorithmMismatchError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class CycleError : public Error {
public:
  explicit CycleError(std::vector<std::string> cycle)
      : Error(describe(cycle)), cycle_(std::move(cycle)) {}

  const std::vector<std::string> &cycle() const { return cycle_; }

private:
  static std::string describe(const std::vector<std::string> &cycle) {
    std::string out = "with-cycle between package specs:";
    for (const auto &c : cycle)
      out += " " + c + " ->";
    if (!cycle.empty())
      out += " " + cycle.front();
    return out;
  }
  std::vector<std::string> cycle_;
};

} // namespace adaimpact

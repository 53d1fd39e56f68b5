#pragma once

#include <stdexcept>
#include <string>

namespace greybox {

/// Raised for malformed models, dangling references and violated preconditions.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An I/O or parse failure tied to a file on disk.
class FileError : public Error {
public:
  FileError(std::string path, const std::string &what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

} // namespace greybox

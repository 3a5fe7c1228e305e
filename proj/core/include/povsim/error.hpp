#pragma once

#include <stdexcept>
#include <string>

namespace povsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid SimConfig field, weight vector of the wrong length, bad config key.
class ConfigError : public Error {
public:
  using Error::Error;
};

class FitError : public Error {
public:
  using Error::Error;
};

/// Length mismatches and other misuse of the metric functions.
class EvaluationError : public Error {
public:
  using Error::Error;
};

/// Read/write failures; the message always carries the path.
class IoError : public Error {
public:
  IoError(const std::string &path, const std::string &what)
      : Error(path + ": " + what), path_(path) {}

  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

} // namespace povsim

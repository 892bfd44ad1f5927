#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace maskaug {

enum class ErrorKind {
  InvalidArgument,
  InvalidDimension,
  DimensionMismatch,
  CorruptAnnotation,
  Parse,
  Schema,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. `kind()` lets callers map
/// failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// RLE payload inconsistent with its declared size. Carries the frame index
/// once the annotation loader knows it.
class CorruptAnnotationError : public Error {
 public:
  explicit CorruptAnnotationError(const std::string& detail,
                                  std::optional<std::size_t> frame = std::nullopt);
  std::optional<std::size_t> frame_index() const noexcept { return frame_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::optional<std::size_t> frame_;
};

/// Malformed file content. `line()` is 1-based for line-oriented formats.
class FileFormatError : public Error {
 public:
  FileFormatError(ErrorKind kind, std::string path, std::optional<std::size_t> line,
                  const std::string& detail);
  const std::string& path() const noexcept { return path_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::string path_;
  std::optional<std::size_t> line_;
};

}  // namespace maskaug

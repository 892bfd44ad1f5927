#include "maskaug/error.hpp"

namespace maskaug {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::CorruptAnnotation: return "corrupt-annotation";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Schema: return "schema-violation";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

namespace {
std::string corrupt_message(const std::string& detail, std::optional<std::size_t> frame) {
  if (frame) return "frame " + std::to_string(*frame) + ": " + detail;
  return detail;
}

std::string file_message(const std::string& path, std::optional<std::size_t> line,
                         const std::string& detail) {
  std::string out = path;
  if (line) out += ":" + std::to_string(*line);
  return out + ": " + detail;
}
}  // namespace

CorruptAnnotationError::CorruptAnnotationError(const std::string& detail,
                                               std::optional<std::size_t> frame)
    : Error(ErrorKind::CorruptAnnotation, corrupt_message(detail, frame)),
      detail_(detail),
      frame_(frame) {}

FileFormatError::FileFormatError(ErrorKind kind, std::string path,
                                 std::optional<std::size_t> line, const std::string& detail)
    : Error(kind, file_message(path, line, detail)), path_(std::move(path)), line_(line) {}

}  // namespace maskaug

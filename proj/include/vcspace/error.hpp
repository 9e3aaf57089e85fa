#pragma once

#include <stdexcept>
#include <string>

namespace vcspace {

// Exit codes of the command-line front end are the numeric values of this enum.
enum class ErrorCode : int {
  UnknownGroup = 1,
  NotPrimitive = 2,
  ConjugateClasses = 3,
  ClassOutsideBound = 4,
  NotAdmissible = 5,
  InvalidInput = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string name, const std::string& message)
      : std::runtime_error(message), code_(code), name_(std::move(name)) {}

  ErrorCode code() const { return code_; }
  const std::string& name() const { return name_; }

 private:
  ErrorCode code_;
  std::string name_;
};

inline Error unknown_group(const std::string& msg) { return {ErrorCode::UnknownGroup, "UnknownGroup", msg}; }
inline Error not_primitive(const std::string& msg) { return {ErrorCode::NotPrimitive, "NotPrimitive", msg}; }
inline Error conjugate_classes(const std::string& msg) {
  return {ErrorCode::ConjugateClasses, "ConjugateClasses", msg};
}
inline Error class_outside_bound(const std::string& msg) {
  return {ErrorCode::ClassOutsideBound, "ClassOutsideBound", msg};
}
inline Error not_admissible(const std::string& msg) { return {ErrorCode::NotAdmissible, "NotAdmissible", msg}; }
inline Error invalid_input(const std::string& name, const std::string& msg) {
  return {ErrorCode::InvalidInput, name, msg};
}

}  // namespace vcspace

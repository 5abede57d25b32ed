#pragma once

#include <stdexcept>
#include <string>

namespace rsched {

// Base of every error thrown by the library. The CLI maps these to exit code 2
// unless stated otherwise.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define RSCHED_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

RSCHED_DEFINE_ERROR(NoSignChange);
RSCHED_DEFINE_ERROR(BadBracket);
RSCHED_DEFINE_ERROR(InvalidInstance);
RSCHED_DEFINE_ERROR(MissingCompletion);
RSCHED_DEFINE_ERROR(PolicyError);
RSCHED_DEFINE_ERROR(AdversaryError);
RSCHED_DEFINE_ERROR(NotAPermutation);
RSCHED_DEFINE_ERROR(EmptyInstance);
RSCHED_DEFINE_ERROR(ConfigError);
RSCHED_DEFINE_ERROR(UnknownPolicy);
RSCHED_DEFINE_ERROR(UnknownFamily);
RSCHED_DEFINE_ERROR(ParseError);

#undef RSCHED_DEFINE_ERROR

} // namespace rsched

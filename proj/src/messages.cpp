#include "c3a/messages.hpp"

#include <string>

#include "c3a/error.hpp"

namespace c3a {

std::string_view to_string(ModeCause c) {
  switch (c) {
    case ModeCause::Takeover:
      return "TAKEOVER";
    case ModeCause::Reclaim:
      return "RECLAIM";
    case ModeCause::Init:
      break;
  }
  return "INIT";
}

ModeCause mode_cause_from_string(std::string_view s) {
  for (auto c : {ModeCause::Takeover, ModeCause::Reclaim, ModeCause::Init}) {
    if (to_string(c) == s) return c;
  }
  throw Error(ErrorKind::MalformedConfig, "unknown mode cause '" + std::string(s) + "'");
}

}  // namespace c3a

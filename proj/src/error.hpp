#pragma once

#include <stdexcept>
#include <string>

#include "greyfc/greyfc.h"

namespace greyfc {

// Typed failure carrying the C-API status code it maps to.
class Error : public std::runtime_error {
 public:
  Error(greyfc_status code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  greyfc_status code() const noexcept { return code_; }

 private:
  greyfc_status code_;
};

[[noreturn]] inline void fail(greyfc_status code, const std::string &message) {
  throw Error(code, message);
}

}  // namespace greyfc

#pragma once

#include <string>

namespace threefold {

// A non-fatal condition surfaced in reports. `code` is a stable identifier.
struct Warning {
  std::string code;
  std::string message;

  friend bool operator==(const Warning&, const Warning&) = default;
};

}  // namespace threefold

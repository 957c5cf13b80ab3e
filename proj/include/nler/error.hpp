#pragma once

#include <stdexcept>
#include <string>

namespace nler {

// All library failures carry a short category used by the CLI error contract
// ("ERROR:<category>: <message>", one line).
class Error : public std::runtime_error {
public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

private:
  std::string category_;
};

[[noreturn]] inline void fail(const char* category, const std::string& message) {
  throw Error(category, message);
}

} // namespace nler

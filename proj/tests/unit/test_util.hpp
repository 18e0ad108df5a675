#pragma once

#include <optional>
#include <utility>

#include "etss/error.hpp"

namespace etss::test {

// Runs fn and reports the ErrorCode it throws, if any.
template <typename Fn>
std::optional<ErrorCode> code_of(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace etss::test

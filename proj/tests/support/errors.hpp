#pragma once

#include <optional>

#include "wbdelta/error.hpp"

namespace wbdelta::oracle {

/// Category of the wbdelta::Error thrown by fn, or nullopt if it returned.
template <class Fn>
std::optional<Errc> error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace wbdelta::oracle

#define EXPECT_ERRC(expr, code) EXPECT_EQ(::wbdelta::oracle::error_code_of([&] { (void)(expr); }), (code))

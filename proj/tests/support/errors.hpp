#pragma once

#include <optional>

#include "thetacong/error.hpp"

// Error code thrown by f, if any.
template <class F>
std::optional<thetacong::Errc> error_of(F&& f) {
  try {
    f();
  } catch (const thetacong::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#pragma once

#include <doctest.h>

#include "toda/error.hpp"

// Runs `f` and returns the ErrorKind it threw; fails the test if nothing was thrown.
template <class F>
toda::ErrorKind thrown_kind(F&& f) {
  try {
    f();
  } catch (const toda::Error& e) {
    return e.kind();
  }
  FAIL("expected a toda::Error");
  return toda::ErrorKind::InvalidArgument;
}

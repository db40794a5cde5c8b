#pragma once

#include <gtest/gtest.h>

#include "pot/errors.hpp"

namespace pot::testing {

// Runs fn and returns the kind of the pot::Error it throws.
template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected pot::Error";
  return ErrorKind::InvalidArgument;
}

}  // namespace pot::testing

#pragma once

#include <doctest.h>

#include "infobounds/error.hpp"

// Runs `expr` and checks that it throws infobounds::Error of the given kind.
#define CHECK_FAILS_WITH(expr, expected_kind)                  \
  do {                                                         \
    bool thrown_ = false;                                      \
    try {                                                      \
      (void)(expr);                                            \
    } catch (const infobounds::Error& e_) {                    \
      thrown_ = true;                                          \
      CHECK(e_.kind() == (expected_kind));                     \
    }                                                          \
    CHECK_MESSAGE(thrown_, "expected an error from " #expr);   \
  } while (false)

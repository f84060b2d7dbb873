#pragma once

#include <doctest.h>

#include <string>

#include "generators.hpp"
#include "grouplat/error.hpp"
#include "grouplat/words.hpp"

namespace grouplat::test {

inline Word w(const AlphabetPtr& a, const std::string& text) { return parse_word(text, a); }

/// Kind of the Error thrown by f; fails the test if nothing is thrown.
template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::InvalidArgument;
}

}  // namespace grouplat::test

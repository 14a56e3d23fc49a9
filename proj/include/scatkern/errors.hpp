// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace scatkern {

// File and stream failures, kept separate from numeric-domain errors so
// callers (notably the CLI) can map them to distinct exit codes.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// A requested tolerance cannot be met within the node budget.  Carries the
// best bound that is achievable so callers can report it.
class tolerance_error : public std::runtime_error {
 public:
  tolerance_error(const std::string& what, double achievable)
      : std::runtime_error(what), achievable_bound(achievable) {}
  double achievable_bound;
};

}  // namespace scatkern

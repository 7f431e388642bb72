// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <fa12/suite.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fa12 {

/// A scripted run: a target, how to set it up, and the calls to judge.
struct Scenario {
    std::string target;  // builtin:<name> or a .tz path
    std::string init;    // per-account balance (builtins) or Micheline text
    std::vector<Address> universe;
    std::vector<GeneratedCall> calls;
    std::optional<std::string> layout_path;
    std::vector<std::string> flags;
    std::optional<bool> strict_approve;
    std::optional<ObservationMode> observation;
};

/// Schema violation; the message starts with a JSON pointer to the
/// offending location.
class ScenarioError : public Error {
public:
    using Error::Error;
};

Scenario parse_scenario(const std::string& json_text);

}  // namespace fa12

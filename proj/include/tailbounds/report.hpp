// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

namespace tailbounds {

/// A named bound value together with its inputs, the constants it used, and
/// the oracle estimate it was checked against.
struct BoundReport {
    std::string name;
    double value = 0.0;
    std::map<std::string, double> inputs;
    std::map<std::string, double> constants_used;
    double oracle_estimate = 0.0;
    double oracle_se = 0.0;
    bool has_oracle = false;
};

}  // namespace tailbounds

// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

namespace su3twa {

enum class ObservableKind {
  SxMean,       // (1/M) sum_i S_x^i
  SzSqPerSite,  // (1/M) sum_i (S_z^i)^2
  RhoS,         // sum_{i != j} S_i^+ S_j^- / M^2
  Casimir1,     // per-site mean of C1 (SU3 only)
  Casimir2,     // per-site mean of C2 (SU3 only)
  Energy,       // total H_W
};

/// Short column name used in CSV headers and configs ("sx", "szsq", ...).
const char* to_string(ObservableKind kind);
std::optional<ObservableKind> observable_from_string(std::string_view name);

}  // namespace su3twa

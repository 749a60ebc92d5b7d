// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "relcoh/report.hpp"

namespace relcoh {

const char* to_string(Method m) {
  switch (m) {
    case Method::closed_form:
      return "closed_form";
    case Method::series:
      return "series";
    case Method::quadrature:
      return "quadrature";
  }
  return "unknown";
}

}  // namespace relcoh

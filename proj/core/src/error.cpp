// Copyright 2026 The marketsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "marketsim/error.hpp"

namespace marketsim {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::missing_file: return "MissingFile";
    case Errc::malformed_row: return "MalformedRow";
    case Errc::dangling_edge_endpoint: return "DanglingEdgeEndpoint";
    case Errc::invalid_dimension: return "InvalidDimension";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::unreachable: return "Unreachable";
    case Errc::negative_input: return "NegativeInput";
    case Errc::too_large: return "TooLarge";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::empty_coalition: return "EmptyCoalition";
    case Errc::nonpositive_standalone: return "NonpositiveStandalone";
    case Errc::zero_denominator: return "ZeroDenominator";
    case Errc::zero_weight: return "ZeroWeight";
    case Errc::invalid_gamma: return "InvalidGamma";
    case Errc::unmapped_entity: return "UnmappedEntity";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
    case Errc::unknown_key: return "UnknownKey";
    case Errc::io_error: return "IoError";
  }
  return "Error";
}

}  // namespace marketsim

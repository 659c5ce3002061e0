#pragma once

#include <json.hpp>

#include "bjorth/orthodigraph.hpp"
#include "bjorth/radon.hpp"

namespace bjorth {

using Json = nlohmann::json;

Json to_json(const OrthoVerdict& verdict);
Json to_json(const DimensionResult& result);
Json to_json(const SmoothClassification& result);
Json to_json(const GraphFingerprint& fp);
Json to_json(const SupNormVerdict& verdict);
Json to_json(const PolyhedralityVerdict& verdict);
Json to_json(const RadonSymmetryReport& report);
Json to_json(const MutualPair& pair);
Json to_json(const HilbertConditionReport& report);

/// Stable content hash (FNV-1a, hex) used for DOT labels and fingerprints.
std::string descriptor_hash(const NeighborhoodDescriptor& d);

}  // namespace bjorth

#include "bjorth/report.hpp"

#include <iomanip>
#include <sstream>

namespace bjorth {

namespace {

Json vec_json(const NVec& v) { return Json(v); }

Json pair_json(const std::pair<NVec, NVec>& p) {
  return Json{{"x", vec_json(p.first)}, {"y", vec_json(p.second)}};
}

}  // namespace

Json to_json(const OrthoVerdict& verdict) {
  Json j;
  j["orthogonal"] = verdict.orthogonal;
  j["margin"] = verdict.margin ? Json(*verdict.margin) : Json(nullptr);
  j["witness"] =
      verdict.witness ? vec_json(verdict.witness->to_num()) : Json(nullptr);
  return j;
}

Json to_json(const DimensionResult& result) {
  return Json{{"dimension", result.dimension},
              {"sampled", result.sampled},
              {"witness", result.witness}};
}

Json to_json(const SmoothClassification& result) {
  return Json{{"smooth_ids", result.smooth_ids},
              {"nonsmooth_ids", result.nonsmooth_ids},
              {"sampled", result.sampled}};
}

Json to_json(const GraphFingerprint& fp) {
  return Json{{"dimension", fp.dimension},
              {"smooth_count", fp.smooth_count},
              {"nonsmooth_count", fp.nonsmooth_count},
              {"out_degrees", fp.out_degrees},
              {"maximal_face_count", fp.maximal_face_count},
              {"sampled", fp.sampled}};
}

Json to_json(const SupNormVerdict& verdict) {
  return Json{{"is_sup_norm", verdict.is_sup_norm},
              {"smooth_neighborhood_count", verdict.smooth_neighborhood_count},
              {"dimension", verdict.dimension},
              {"sampled", verdict.sampled}};
}

Json to_json(const PolyhedralityVerdict& verdict) {
  Json counts = Json::object();
  for (const auto& [size, distinct] : verdict.sampled_counts)
    counts[std::to_string(size)] = distinct;
  return Json{{"polyhedral_like", verdict.polyhedral_like},
              {"exact", verdict.exact},
              {"distinct_count", verdict.distinct_count},
              {"sampled_counts", counts}};
}

Json to_json(const RadonSymmetryReport& report) {
  Json j;
  j["symmetric"] = report.symmetric;
  j["exact"] = report.exact;
  j["max_violation"] = report.max_violation;
  j["counterexample"] = report.counterexample
                            ? pair_json(*report.counterexample)
                            : Json(nullptr);
  j["pairs_checked"] = report.pairs_checked;
  return j;
}

Json to_json(const MutualPair& pair) {
  return Json{{"x", vec_json(pair.x)},
              {"y", vec_json(pair.y)},
              {"forward_margin", pair.forward_margin},
              {"reverse_margin", pair.reverse_margin}};
}

Json to_json(const HilbertConditionReport& report) {
  Json segments = Json::array();
  for (const auto& seg : report.segments)
    segments.push_back(Json{{"a", vec_json(seg.first)},
                            {"b", vec_json(seg.second)}});
  return Json{{"all_flat_endpoints_smooth", report.all_flat_endpoints_smooth},
              {"flat_segments", report.flat_segments},
              {"segments", segments}};
}

std::string descriptor_hash(const NeighborhoodDescriptor& d) {
  std::ostringstream canon;
  canon << std::setprecision(17);
  canon << (d.mode == NeighborhoodDescriptor::Mode::ExactActiveSet ? "A" : "K");
  canon << (d.side == NeighborhoodDescriptor::Side::Outgoing ? "o" : "i");
  for (int k : d.signed_active) canon << ' ' << k;
  canon << '|';
  for (int k : d.incoming_classes) canon << ' ' << k;
  canon << '|';
  for (double g : d.gradient) canon << ' ' << g;
  canon << '|';
  for (const NVec& row : d.kernel_basis) {
    for (double g : row) canon << ' ' << g;
    canon << ';';
  }

  const std::string bytes = canon.str();
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

}  // namespace bjorth

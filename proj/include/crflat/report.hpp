#pragma once

#include "crflat/sff.hpp"

#include <json.hpp>
#include <string>

namespace crflat::report {

using json = nlohmann::ordered_json;

// Exact values as rational strings, floating values as full-precision numbers; both tagged.
json to_json(const Scalar& s);
json to_json(const Matrix& m);
json to_json(const BoundaryPoint& p);
json to_json(const Tolerances& t);
json to_json(const Membership& m);
json to_json(const RankReport& r);
json to_json(const NormalizedJet& j);
json to_json(const MuData& m);
json to_json(const Star3Result& s);
json to_json(const LiftFrame& f);
json to_json(const MCRelations& r);
json to_json(const SFFTensor& q);
json to_json(const ExtrinsicReport& x);
json to_json(const EquivalenceReport& e);
json to_json(const FlatnessVerdict& v);
json to_json(const Failure& f);

std::uint64_t fnv1a(const std::string& data);
std::string hex64(std::uint64_t v);

// Indented key/value rendering of a report document.
std::string render_text(const json& doc);

}  // namespace crflat::report

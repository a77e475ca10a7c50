#pragma once

#include "drm/reconstruction.hpp"
#include "drm/verify.hpp"

#include "json.hpp"

#include <string>
#include <vector>

// Canonical JSON serialization with stable key order (insertion-ordered
// documents, deterministic content) and a derived plain-text table view.

namespace drm {

using ojson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

ojson field_json(const FieldData& K);
ojson ideal_json(const IdealHNF& a);
ojson level_json(const DRLevel& L);
ojson tower_json(const FieldData& K, const std::vector<DRLevel>& levels);
ojson idempotents_json(const DRLevel& L);
ojson suite_json(const SuiteReport& rep);
ojson comparison_json(const ComparisonReport& rep);

std::string dump_canonical(const ojson& j);

// Plain-text rendering derived from the JSON document, never computed
// separately from it.
std::string render_table(const ojson& j);

} // namespace drm

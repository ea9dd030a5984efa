// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

// JSON result documents written by the CLI and the acceptance runner.

#pragma once

#include "rainbow/applications.hpp"
#include "rainbow/pipeline.hpp"

#include <json.hpp>

namespace rainbow {

inline constexpr const char *kResultSchema = "rainbow-embed/result/v1";

nlohmann::ordered_json to_json(const Verdict &v);
nlohmann::ordered_json to_json(const Transcript &t);

// {"schema", "command", "seed", ...}; command specific fields follow
nlohmann::ordered_json result_header(const std::string &command, std::uint64_t seed);

void add_outcome(nlohmann::ordered_json &doc, const EmbedOutcome &out, const ColouredGraph &H, const ColouredGraph &G);
void add_packing(nlohmann::ordered_json &doc, const PackingResult &res, const ColouredGraph &H);
void add_odc(nlohmann::ordered_json &doc, const OdcResult &res, const ColouredGraph &H);
void add_labelling(nlohmann::ordered_json &doc, const LabellingResult &res, const AbelianGroup &group);

// dump with a trailing newline; stable key order
std::string render(const nlohmann::ordered_json &doc);

} // namespace rainbow

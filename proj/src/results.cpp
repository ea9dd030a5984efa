// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/results.hpp"

namespace rainbow {

using json = nlohmann::ordered_json;

namespace {

json edges_json(const EdgeList &edges)
{
    json a = json::array();
    for (auto &e : edges)
        a.push_back({e.u, e.v});
    return a;
}

} // namespace

json to_json(const Verdict &v)
{
    json j;
    j["ok"] = v.ok;
    j["total_violations"] = v.total_violations;
    json vs = json::array();
    for (auto &x : v.violations)
        vs.push_back({{"kind", x.kind}, {"witness", x.witness}});
    j["violations"] = std::move(vs);
    return j;
}

json to_json(const Transcript &t)
{
    json j;
    json cfg = json::object();
    for (auto &[k, v] : t.config)
        cfg[k] = v;
    j["config"] = std::move(cfg);
    json st = json::array();
    for (auto &s : t.stages) {
        json r;
        r["stage"] = s.stage;
        r["attempt"] = s.attempt;
        json c = json::object();
        for (auto &[k, v] : s.counters)
            c[k] = v;
        r["counters"] = std::move(c);
        if (!s.notes.empty())
            r["notes"] = s.notes;
        st.push_back(std::move(r));
    }
    j["stages"] = std::move(st);
    j["attempts_used"] = t.attempts_used;
    j["verdict"] = t.verdict;
    return j;
}

json result_header(const std::string &command, std::uint64_t seed)
{
    json j;
    j["schema"] = kResultSchema;
    j["command"] = command;
    j["seed"] = seed;
    return j;
}

void add_outcome(json &doc, const EmbedOutcome &out, const ColouredGraph &H, const ColouredGraph &G)
{
    doc["success"] = out.success;
    if (out.success) {
        doc["embedding"] = out.embedding;
        json cols = json::array();
        for (auto c : out.edge_colours)
            cols.push_back(G.colour_label(c));
        doc["edge_colours"] = std::move(cols);
        doc["verify"] = {{"embedding", to_json(check_embedding(H, G, out.embedding))},
                         {"rainbow", to_json(check_rainbow(G, out.embedding, H))}};
    } else {
        doc["error"] = to_string(out.error);
        doc["failed_stage"] = out.failed_stage;
        doc["message"] = out.message;
    }
    doc["transcript"] = to_json(out.transcript);
}

void add_packing(json &doc, const PackingResult &res, const ColouredGraph &H)
{
    doc["success"] = true;
    doc["group_order"] = res.group.elements.size();
    doc["orbits"] = res.group.orbit_count;
    doc["full_orbits"] = res.group.full_orbits;
    doc["base_copy"] = res.base_copy;
    json copies = json::array();
    for (auto &c : res.copies)
        copies.push_back(c);
    doc["copies"] = std::move(copies);
    doc["base_edges"] = edges_json(image_edges(H, res.base_copy));
    doc["covered_edges"] = res.verdict.covered_edges;
    doc["host_edges"] = res.host.edge_count();
    doc["decomposition"] = res.decomposition;
    doc["verify"] = to_json(res.verdict.verdict);
    doc["transcript"] = to_json(res.transcript);
}

void add_odc(json &doc, const OdcResult &res, const ColouredGraph &H)
{
    doc["success"] = true;
    doc["base_copy"] = res.base_copy;
    json copies = json::array();
    for (auto &c : res.copies)
        copies.push_back(c);
    doc["copies"] = std::move(copies);
    doc["base_edges"] = edges_json(image_edges(H, res.base_copy));
    doc["deficiency"] = {{"uncovered_edges", res.uncovered_edges},
                         {"single_edges", res.single_edges},
                         {"double_edges", res.double_edges},
                         {"disjoint_pairs", res.disjoint_pairs}};
    doc["verify"] = to_json(res.verdict);
    doc["transcript"] = to_json(res.transcript);
}

void add_labelling(json &doc, const LabellingResult &res, const AbelianGroup &group)
{
    doc["success"] = true;
    doc["group"] = group.name();
    doc["labels"] = res.labels;
    doc["verify"] = to_json(res.verdict);
    doc["transcript"] = to_json(res.transcript);
}

std::string render(const json &doc) { return doc.dump(2) + "\n"; }

} // namespace rainbow

// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

// rainbow-embed: batch front end for the pipeline, the applications, the
// generators and the diagnostics.
//
// exit codes: 0 verified success, 1 internal error, 2 parse / bad input,
// 3 gate rejected the instance, 4 retries exhausted

#include "rainbow/applications.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/regularity.hpp"
#include "rainbow/results.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace rainbow;
using json = nlohmann::ordered_json;

namespace {

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidInput:
    case ErrorKind::Precondition:
        return 2;
    case ErrorKind::Gate:
        return 3;
    case ErrorKind::RetriesExhausted:
    case ErrorKind::CapExceeded:
        return 4;
    case ErrorKind::Internal:
        break;
    }
    return 1;
}

struct Common {
    std::uint64_t seed = 0;
    double gamma = 0, mu = 0;
    std::size_t retries = 0;
    std::string eps_schedule;
    bool force = false;
    std::string out;
    std::string format = "json";
    std::string config;

    CLI::Option *o_seed = nullptr, *o_gamma = nullptr, *o_mu = nullptr, *o_retries = nullptr, *o_eps = nullptr;

    void attach(CLI::App *app)
    {
        o_seed = app->add_option("--seed", seed, "RNG seed");
        o_gamma = app->add_option("--gamma", gamma, "layer split probability");
        o_mu = app->add_option("--mu", mu, "reservoir fraction");
        o_retries = app->add_option("--retries", retries, "independent pipeline attempts");
        o_eps = app->add_option("--eps-schedule", eps_schedule, "comma separated increasing eps values");
        app->add_flag("--force", force, "skip the feasibility gates");
        app->add_option("--out", out, "result file (written atomically); stdout when absent");
        app->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        app->add_option("--config", config, "JSON file with config values; flags take precedence");
    }

    // defaults < config file < flags
    PipelineConfig pipeline() const
    {
        PipelineConfig cfg;
        if (!config.empty()) {
            std::ifstream in(config);
            if (!in)
                fail(ErrorKind::Parse, "cannot open config file " + config);
            json j;
            try {
                j = json::parse(in);
            } catch (const std::exception &e) {
                fail(ErrorKind::Parse, "config file " + config + ": " + e.what());
            }
            auto num = [&](const char *key, auto &field) {
                if (j.contains(key))
                    field = j.at(key).get<std::decay_t<decltype(field)>>();
            };
            try {
                num("seed", cfg.rng_seed);
                num("gamma", cfg.gamma);
                num("mu", cfg.mu);
                num("retries", cfg.retries);
                num("round_retries", cfg.round_retries);
                num("completion_restarts", cfg.completion_restarts);
                num("completion_node_budget", cfg.completion_node_budget);
                num("eps_schedule", cfg.eps_schedule);
                num("reductions", cfg.reductions);
                num("strict_completion_checks", cfg.strict_completion_checks);
                num("relaxed_completion", cfg.relaxed_completion);
                num("enforce_round_checks", cfg.enforce_round_checks);
                num("force", cfg.force);
                num("slack", cfg.slack);
                num("partition_eps", cfg.partition_eps);
                num("partition_retries", cfg.partition_retries);
                num("codegree_cap", cfg.codegree_cap);
                num("weight_functions", cfg.weight_functions);
                num("sample_count", cfg.sample_count);
                num("gate_eps", cfg.gate_eps);
                if (j.contains("nibble"))
                    cfg.nibble.enabled = j.at("nibble").get<bool>();
            } catch (const json::exception &e) {
                fail(ErrorKind::Parse, "config file " + config + ": " + e.what());
            }
        }
        if (o_seed->count())
            cfg.rng_seed = seed;
        if (o_gamma->count())
            cfg.gamma = gamma;
        if (o_mu->count())
            cfg.mu = mu;
        if (o_retries->count())
            cfg.retries = retries;
        if (o_eps->count()) {
            cfg.eps_schedule.clear();
            std::stringstream ss(eps_schedule);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    cfg.eps_schedule.push_back(std::stod(tok));
                } catch (const std::exception &) {
                    fail(ErrorKind::Parse, "bad eps schedule entry '" + tok + "'");
                }
            }
        }
        if (force)
            cfg.force = true;
        validate_config(cfg);
        return cfg;
    }

    void emit(const json &doc, const std::string &text) const
    {
        const std::string body = format == "json" ? render(doc) : text;
        if (out.empty())
            std::cout << body;
        else
            write_file_atomic(out, body);
    }
};

std::string verdict_text(const Verdict &v)
{
    std::ostringstream os;
    os << (v.ok ? "ok" : "FAILED") << " (" << v.total_violations << " violations)\n";
    for (auto &x : v.violations)
        os << "  " << x.kind << ": " << x.witness << '\n';
    return os.str();
}

std::string embedding_text(const Embedding &phi)
{
    std::ostringstream os;
    for (std::size_t x = 0; x < phi.size(); ++x)
        os << x << " -> " << phi[x] << '\n';
    return os.str();
}

// 2-colouring of a bipartite H by BFS
std::vector<int> bipartition(const ColouredGraph &H)
{
    std::vector<int> side(H.vertex_count(), -1);
    for (Vertex s = 0; s < H.vertex_count(); ++s) {
        if (side[s] >= 0)
            continue;
        side[s] = 0;
        std::vector<Vertex> q{s};
        for (std::size_t i = 0; i < q.size(); ++i)
            for (auto w : H.neighbours(q[i])) {
                if (side[w] < 0) {
                    side[w] = 1 - side[q[i]];
                    q.push_back(w);
                } else if (side[w] == side[q[i]])
                    fail(ErrorKind::InvalidInput, "target graph is not bipartite");
            }
    }
    return side;
}

BlowUpInstance load_instance(const std::string &path, const ColouredGraph &H, const ColouredGraph &G)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, "cannot open partition file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception &e) {
        fail(ErrorKind::Parse, "partition file " + path + ": " + e.what());
    }
    BlowUpInstance inst;
    inst.H = H;
    inst.G = G;
    try {
        inst.X = j.at("X").get<std::vector<VertexSet>>();
        inst.V = j.at("V").get<std::vector<VertexSet>>();
        inst.params.eps = j.value("eps", 0.1);
        inst.params.d = j.value("d", 1.0);
        inst.params.gamma = j.value("gamma", 0.1);
        inst.params.Delta = j.value("Delta", H.max_degree());
        inst.params.Lambda = j.value("Lambda", colouring_stats(G).local_max);
    } catch (const json::exception &e) {
        fail(ErrorKind::Parse, "partition file " + path + ": " + e.what());
    }
    return inst;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"rainbow-embed: rainbow spanning embeddings and their applications"};
    app.require_subcommand(1);

    Common c;
    std::string host, target, partition, group_spec, group_table;
    std::size_t n = 0, k = 0;
    bool cyclic = false, bipartite = false;

    auto *embed = app.add_subcommand("embed", "rainbow copy of the target in the host");
    embed->add_option("--host", host, "edge-coloured host graph")->required();
    embed->add_option("--target", target, "target graph")->required();
    embed->add_option("--partition", partition, "JSON {X, V, eps, d}: run the blow-up driver on this instance");
    c.attach(embed);

    auto *pack = app.add_subcommand("pack", "group generated packings");
    pack->add_flag("--cyclic", cyclic, "cyclic packing in K_n");
    pack->add_flag("--bipartite", bipartite, "Z_n generated packing in K_{n,n}");
    pack->add_option("-n", n, "host order")->required();
    pack->add_option("--target", target, "target graph")->required();
    c.attach(pack);

    auto *odc = app.add_subcommand("odc", "approximate orthogonal double cover of K_{2^k}");
    odc->add_option("-k", k, "exponent, n = 2^k")->required();
    odc->add_option("--target", target, "target graph")->required();
    c.attach(odc);

    auto *label = app.add_subcommand("label", "harmonious labelling");
    label->add_option("--group", group_spec, "Z16, Z2xZ8, ...");
    label->add_option("--group-table", group_table, "Cayley table file");
    label->add_option("--target", target, "target graph")->required();
    c.attach(label);

    double d_eps = 0.1, d_density = -1;
    std::size_t d_samples = 64;
    auto *diagnose = app.add_subcommand("diagnose", "colouring statistics and regularity of a host");
    diagnose->add_option("--host", host, "edge-coloured host graph")->required();
    diagnose->add_option("--target", target, "optional target for the global boundedness gate");
    diagnose->add_option("--eps", d_eps, "quasirandomness eps");
    diagnose->add_option("--density", d_density, "density d (default: measured)");
    diagnose->add_option("--samples", d_samples, "sampled set pairs");
    c.attach(diagnose);

    std::string kind;
    std::vector<std::string> params;
    auto *gen_cmd = app.add_subcommand("gen", "generate a host or target graph");
    gen_cmd->add_option("kind", kind,
                        "distance-kn N | xor-clique K | gnp N P COLOURS | tree EDGES MAXDEG | bounded N EDGES MAXDEG "
                        "| grid R C | path EDGES | star LEAVES | bipartite A B P | two-cliques N")
        ->required();
    gen_cmd->add_option("params", params, "generator parameters");
    c.attach(gen_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (embed->parsed()) {
            auto cfg = c.pipeline();
            auto G = load_host_graph(host);
            auto H = load_coloured_graph(target);
            auto doc = result_header("embed", cfg.rng_seed);
            doc["inputs"] = {{"host", host}, {"target", target}};
            EmbedOutcome out;
            if (!partition.empty()) {
                doc["inputs"]["partition"] = partition;
                out = try_embed_rainbow(load_instance(partition, H, G), cfg);
            } else {
                out = try_embed_quasirandom(G, H, cfg);
            }
            add_outcome(doc, out, H, G);
            std::ostringstream text;
            if (out.success) {
                text << "success: rainbow copy verified\n" << embedding_text(out.embedding);
            } else {
                text << "failed at " << out.failed_stage << ": " << out.message << '\n';
                for (auto &s : out.transcript.stages)
                    if (s.stage == out.failed_stage)
                        for (auto &note : s.notes)
                            text << "  " << note << '\n';
            }
            text << out.transcript.to_text();
            c.emit(doc, text.str());
            if (!out.success) {
                std::cerr << "rainbow-embed: " << out.failed_stage << ": " << out.message << '\n';
                for (auto &s : out.transcript.stages)
                    if (s.stage == out.failed_stage)
                        for (auto &note : s.notes)
                            std::cerr << "  " << note << '\n';
                return exit_code(out.error);
            }
            return 0;
        }

        if (pack->parsed()) {
            if (cyclic == bipartite)
                fail(ErrorKind::Precondition, "pick exactly one of --cyclic and --bipartite");
            auto cfg = c.pipeline();
            auto H = load_coloured_graph(target);
            auto res = cyclic ? cyclic_packing(H, n, cfg) : bipartite_packing(H, bipartition(H), n, cfg);
            auto doc = result_header(cyclic ? "pack-cyclic" : "pack-bipartite", cfg.rng_seed);
            doc["inputs"] = {{"target", target}, {"n", n}};
            add_packing(doc, res, H);
            std::ostringstream text;
            text << "packing of " << res.copies.size() << " copies, " << res.verdict.covered_edges << " of "
                 << res.host.edge_count() << " host edges covered\n"
                 << "decomposition: " << (res.decomposition ? "yes" : "no") << '\n'
                 << "verify: " << verdict_text(res.verdict.verdict) << "base copy:\n"
                 << embedding_text(res.base_copy);
            c.emit(doc, text.str());
            return 0;
        }

        if (odc->parsed()) {
            auto cfg = c.pipeline();
            auto H = load_coloured_graph(target);
            auto res = odc_cover(H, k, cfg);
            auto doc = result_header("odc", cfg.rng_seed);
            doc["inputs"] = {{"target", target}, {"k", k}};
            add_odc(doc, res, H);
            std::ostringstream text;
            text << "odc: " << res.copies.size() << " translates\n"
                 << "verify: " << verdict_text(res.verdict) << "edges in 0/1/2 copies: " << res.uncovered_edges << '/'
                 << res.single_edges << '/' << res.double_edges << "\ncopy pairs sharing no edge: "
                 << res.disjoint_pairs << "\nbase copy:\n"
                 << embedding_text(res.base_copy);
            c.emit(doc, text.str());
            return 0;
        }

        if (label->parsed()) {
            if (group_spec.empty() == group_table.empty())
                fail(ErrorKind::Precondition, "give exactly one of --group and --group-table");
            auto cfg = c.pipeline();
            auto group = group_spec.empty() ? AbelianGroup::load_table(group_table)
                                            : AbelianGroup::parse_spec(group_spec);
            auto H = load_coloured_graph(target);
            auto res = harmonious_labelling(H, group, cfg);
            auto doc = result_header("label", cfg.rng_seed);
            doc["inputs"] = {{"target", target}, {"group", group.name()}};
            add_labelling(doc, res, group);
            std::ostringstream text;
            text << "harmonious labelling into " << group.name() << '\n' << "verify: " << verdict_text(res.verdict);
            for (std::size_t x = 0; x < res.labels.size(); ++x)
                text << x << " -> " << res.labels[x] << '\n';
            c.emit(doc, text.str());
            return 0;
        }

        if (diagnose->parsed()) {
            auto cfg = c.pipeline();
            auto G = load_host_graph(host);
            auto st = colouring_stats(G);
            const double N = double(G.vertex_count());
            const double d = d_density >= 0 ? d_density : (N > 1 ? 2.0 * double(G.edge_count()) / (N * (N - 1)) : 0);
            auto doc = result_header("diagnose", cfg.rng_seed);
            doc["inputs"] = {{"host", host}};
            doc["vertices"] = G.vertex_count();
            doc["edges"] = G.edge_count();
            doc["colours"] = G.colour_count();
            doc["global_max"] = st.global_max;
            doc["local_max"] = st.local_max;
            doc["codegree"] = st.codegree;
            std::ostringstream text;
            text << "vertices " << G.vertex_count() << ", edges " << G.edge_count() << ", colours "
                 << G.colour_count() << '\n'
                 << "global_max " << st.global_max << '\n'
                 << "local_max " << st.local_max << '\n'
                 << "locally 2-bounded: " << (st.local_max <= 2 ? "yes" : "no") << '\n';
            if (!target.empty()) {
                auto H = load_coloured_graph(target);
                auto gate = quasirandom_gate(G, H, cfg.slack);
                doc["gate"] = {{"passed", gate.passed}, {"limit", gate.limit}, {"global_max", gate.global_max}};
                json offenders = json::array();
                text << "global gate (1-slack) e(G)/e(H) = " << gate.limit << ": "
                     << (gate.passed ? "pass" : "FAIL") << '\n';
                for (auto [col, cnt] : gate.offending) {
                    offenders.push_back({{"colour", G.colour_label(col)}, {"edges", cnt}});
                    text << "  colour " << G.colour_label(col) << ": " << cnt << " edges\n";
                }
                doc["gate"]["offending"] = std::move(offenders);
            }
            try {
                auto qr = check_quasirandom(G, d_eps, d, d_samples, cfg.rng_seed);
                doc["quasirandom"] = {{"eps", d_eps},
                                      {"d", d},
                                      {"passed", qr.passed},
                                      {"worst_pair_density", qr.worst_pair_density},
                                      {"degree_range", {qr.degree_range.first, qr.degree_range.second}},
                                      {"exhaustive", qr.exhaustive}};
                text << "quasirandom (" << d_eps << ", " << d << "): " << (qr.passed ? "pass" : "FAIL") << '\n'
                     << "  degree range " << qr.degree_range.first << " .. " << qr.degree_range.second << '\n'
                     << "  worst pair density " << qr.worst_pair_density << '\n';
                json wit = json::array();
                for (auto &w : qr.witnesses) {
                    wit.push_back({{"kind", w.kind}, {"S", w.S}, {"T", w.T}, {"density", w.density}});
                    text << "  witness " << w.kind << ": |S|=" << w.S.size() << " |T|=" << w.T.size() << " density "
                         << w.density << '\n';
                }
                doc["quasirandom"]["witnesses"] = std::move(wit);
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::Precondition)
                    throw;
                doc["quasirandom"] = {{"skipped", e.what()}};
                text << "quasirandom: skipped (" << e.what() << ")\n";
            }
            c.emit(doc, text.str());
            return 0;
        }

        if (gen_cmd->parsed()) {
            auto need = [&](std::size_t count) {
                if (params.size() != count)
                    fail(ErrorKind::Precondition,
                         "gen " + kind + " takes " + std::to_string(count) + " parameters");
            };
            auto u = [&](std::size_t i) -> std::size_t {
                try {
                    std::size_t pos = 0;
                    auto v = std::stoull(params[i], &pos);
                    if (pos != params[i].size())
                        throw std::invalid_argument("trailing");
                    return v;
                } catch (const std::exception &) {
                    fail(ErrorKind::Precondition, "parameter '" + params[i] + "' is not a count");
                }
            };
            auto f = [&](std::size_t i) -> double {
                try {
                    return std::stod(params[i]);
                } catch (const std::exception &) {
                    fail(ErrorKind::Precondition, "parameter '" + params[i] + "' is not a number");
                }
            };
            ColouredGraph g;
            const auto seed = c.o_seed->count() ? c.seed : 0;
            if (kind == "distance-kn") {
                need(1);
                g = gen::distance_clique(u(0));
            } else if (kind == "xor-clique") {
                need(1);
                g = gen::xor_clique(u(0));
            } else if (kind == "gnp") {
                need(3);
                g = gen::random_coloured(u(0), f(1), u(2), seed);
            } else if (kind == "tree") {
                need(2);
                g = gen::random_tree(u(0), u(1), seed);
            } else if (kind == "bounded") {
                need(3);
                g = gen::random_bounded_degree(u(0), u(1), u(2), seed);
            } else if (kind == "grid") {
                need(2);
                g = gen::grid(u(0), u(1));
            } else if (kind == "path") {
                need(1);
                g = gen::path(u(0));
            } else if (kind == "star") {
                need(1);
                g = gen::star(u(0));
            } else if (kind == "bipartite") {
                need(3);
                g = gen::random_bipartite(u(0), u(1), f(2), seed);
            } else if (kind == "two-cliques") {
                need(1);
                g = gen::two_cliques(u(0));
            } else {
                fail(ErrorKind::Precondition, "unknown generator '" + kind + "'");
            }
            if (c.out.empty())
                std::cout << to_text(g);
            else
                save_coloured_graph(g, c.out);
            return 0;
        }
    } catch (const Error &e) {
        std::cerr << "rainbow-embed: " << to_string(e.kind()) << (e.stage().empty() ? "" : " [" + e.stage() + "]")
                  << ": " << e.what() << '\n';
        for (auto &d : e.details)
            std::cerr << "  " << d << '\n';
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "rainbow-embed: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

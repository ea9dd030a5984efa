// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/pipeline.hpp"

#include "rainbow/kernels.hpp"
#include "rainbow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace rainbow {

namespace {

constexpr std::uint64_t kAttemptStream = 0xa77;
constexpr std::uint64_t kLayer = 0x1;
constexpr std::uint64_t kRound = 0x2;
constexpr std::uint64_t kComplete = 0x3;
constexpr std::uint64_t kReduce = 0x4;
constexpr std::uint64_t kGateSeed = 0x5;
constexpr std::uint64_t kPartitionStream = 0x9a7;
constexpr std::uint64_t kEquitableSeed = 0xe9;

std::string fmt(double x)
{
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

struct AttemptResult {
    bool ok = false;
    Embedding embedding;
    Transcript transcript;
    std::string stage;
    std::string message;
    ErrorKind error = ErrorKind::RetriesExhausted;
    std::exception_ptr internal;
};

void echo_config(Transcript &t, const PipelineConfig &cfg)
{
    auto &c = t.config;
    c["gamma"] = fmt(cfg.gamma);
    c["mu"] = fmt(cfg.mu);
    std::string sched;
    for (auto e : cfg.eps_schedule)
        sched += (sched.empty() ? "" : ",") + fmt(e);
    c["eps_schedule"] = sched.empty() ? "geometric(0.1,2)" : sched;
    c["retries"] = std::to_string(cfg.retries);
    c["round_retries"] = std::to_string(cfg.round_retries);
    c["completion_restarts"] = std::to_string(cfg.completion_restarts);
    c["completion_node_budget"] = std::to_string(cfg.completion_node_budget);
    c["seed"] = std::to_string(cfg.rng_seed);
    c["nibble"] = cfg.nibble.enabled ? "on" : "off";
    c["nibble_theta"] = fmt(cfg.nibble.theta);
    c["reductions"] = cfg.reductions ? "on" : "off";
    c["strict_completion_checks"] = cfg.strict_completion_checks ? "on" : "off";
    c["relaxed_completion"] = cfg.relaxed_completion ? "on" : "off";
    c["enforce_round_checks"] = cfg.enforce_round_checks ? "on" : "off";
    c["force"] = cfg.force ? "on" : "off";
    c["slack"] = fmt(cfg.slack);
    c["partition_eps"] = fmt(cfg.partition_eps);
    c["partition_retries"] = std::to_string(cfg.partition_retries);
    c["codegree_cap"] = cfg.codegree_cap ? std::to_string(cfg.codegree_cap) : "ceil(n^(1/3))";
    c["weight_functions"] = std::to_string(cfg.weight_functions);
}

// one pass of the whole lemma on a fixed instance
AttemptResult run_attempt(const BlowUpInstance &inst, const PipelineConfig &cfg, std::size_t attempt,
                          std::uint64_t seed)
{
    AttemptResult res;
    auto &tr = res.transcript;
    try {
        BlowUpInstance W = inst;
        if (cfg.reductions) {
            auto &rec = tr.add("reductions", attempt);
            rec.counters["padding_edges"] = double(pad_h_matchings(W, W.params.gamma, derive_seed(seed, kReduce, 0)));
            auto [G2, rep] = colour_split_transform(W, derive_seed(seed, kReduce, 1));
            rec.counters["split_attempts"] = double(rep.attempts);
            rec.counters["split_density"] = rep.target_density;
            W.G = std::move(G2);
            auto [refined, rrep] = refine_instance(W, W.params.gamma, derive_seed(seed, kReduce, 2));
            rec.counters["refine_attempts"] = double(rrep.attempts);
            rec.counters["artificial_edges"] = double(rrep.artificial_edges);
            W = std::move(refined);
        }
        const auto r = W.r();
        auto eps = eps_schedule(cfg, r);

        auto split = split_host_colours(W.G, cfg.gamma, derive_seed(seed, kLayer));
        {
            auto &rec = tr.add("layer-split", attempt);
            std::size_t ca = 0, cb = 0;
            for (Colour a = 0; a < W.G.colour_count(); ++a) {
                if (W.G.colour_size(a) == 0)
                    continue;
                bool inA = split.A.colour_size(a) > 0, inB = split.B.colour_size(a) > 0;
                if (inA && inB)
                    fail(ErrorKind::Internal, "colour class split across layers", "layer-split");
                ca += inA;
                cb += inB;
            }
            if (split.A.edge_count() + split.B.edge_count() != W.G.edge_count())
                fail(ErrorKind::Internal, "layers do not partition E(G)", "layer-split");
            rec.counters["colours_A"] = double(ca);
            rec.counters["colours_B"] = double(cb);
            rec.counters["edges_A"] = double(split.A.edge_count());
            rec.counters["edges_B"] = double(split.B.edge_count());
        }

        auto ctx = make_context(W, split.A, split.B);
        std::vector<CandidacyGraph> A;
        for (std::size_t i = 0; i < r; ++i)
            A.push_back(complete_candidacy(W.X[i], W.V[i]));
        PartialEmbedding phi;
        phi.assignment.assign(W.H.vertex_count(), kUnmapped);

        for (std::size_t k = 0; k < r; ++k) {
            std::vector<std::size_t> later;
            for (std::size_t i = k + 1; i < r; ++i)
                later.push_back(i);
            const auto before = phi.round;
            auto rep = approx_embed_round(ctx, k, later, A, phi, eps[k], eps[k + 1], cfg, derive_seed(seed, kRound, k));
            auto &rec = tr.add("round-" + std::to_string(k), attempt);
            rec.counters["matched"] = double(rep.matched);
            rec.counters["target"] = double(rep.target);
            rec.counters["cluster"] = double(W.X[k].size());
            rec.counters["retries"] = double(rep.retries);
            rec.counters["pruned_A0"] = double(rep.prune.removed_A0);
            rec.counters["pruned_Ai"] = double(rep.prune.removed_Ai);
            rec.counters["pruned_G"] = double(rep.prune.removed_G);
            rec.counters["bad_vertices"] = double(rep.prune.bad_vertices);
            rec.counters["colour_conflicts"] = double(rep.prune.colour_conflicts);
            rec.counters["prune_fraction"] = rep.prune.worst_fraction;
            rec.counters["max_colour_load"] = double(rep.max_colour_load);
            rec.counters["max_codegree"] = double(rep.max_codegree);
            rec.counters["colour_growth"] = double(rep.colour_growth);
            rec.counters["regular_fail"] = double(rep.regular_fail);
            std::size_t significant = 0;
            double worst = 1;
            for (auto &w : rep.weights)
                if (w.significant) {
                    ++significant;
                    if (std::abs(w.ratio() - 1) > std::abs(worst - 1))
                        worst = w.ratio();
                }
            rec.counters["weights"] = double(rep.weights.size());
            rec.counters["weights_significant"] = double(significant);
            rec.counters["weights_worst_ratio"] = worst;
            if (phi.round == before) {
                res.stage = "round-" + std::to_string(k);
                std::string why = !rep.prune.within_budget ? "prune budget exceeded"
                                  : !rep.size_ok           ? "matching below target"
                                  : !rep.bounded_ok        ? "colour load"
                                                           : "codegree";
                rec.notes.push_back(why);
                res.message = "round " + std::to_string(k) + ": " + why;
                return res;
            }
        }

        CompletionState state;
        state.inst = &W;
        state.GA = &split.A;
        state.GB = &split.B;
        auto crep = complete_embedding(state, phi, cfg, eps[r], derive_seed(seed, kComplete));
        {
            auto &rec = tr.add("completion", attempt);
            rec.counters["leftovers"] = double(crep.leftovers);
            rec.counters["n_B"] = double(crep.n_B);
            rec.counters["n_B_nominal"] = double(crep.n_B_nominal);
            rec.counters["restarts"] = double(crep.restarts);
            rec.counters["nodes"] = double(crep.nodes);
            rec.counters["reused_edges"] = double(crep.reused_edges);
            rec.counters["relaxed"] = crep.relaxed;
            rec.counters["check_a"] = crep.checks.gb_regular;
            rec.counters["check_b"] = crep.checks.b_regular;
            rec.counters["check_c"] = crep.checks.reservoir_bounded;
            rec.counters["check_d"] = crep.checks.hit_bounded;
            rec.counters["check_e"] = crep.checks.sizes;
            rec.counters["hit_edges"] = double(state.hit_edges.size());
            std::size_t b_arcs = 0;
            for (auto &b : state.B)
                b_arcs += b.edge_count();
            rec.counters["mirror_arcs"] = double(b_arcs);
            if (crep.n_B > crep.n_B_nominal)
                rec.notes.push_back("reservoir grown beyond ceil(mu n)");
        }
        if (!crep.success) {
            res.stage = "completion";
            res.message = "completion failed with " + std::to_string(crep.leftovers) + " leftovers";
            return res;
        }

        // independent verification against the caller's graphs
        auto v1 = check_embedding(inst.H, inst.G, phi.assignment);
        auto v2 = v1.ok ? check_rainbow(inst.G, phi.assignment, inst.H) : Verdict{};
        auto &rec = tr.add("verify", attempt);
        rec.counters["embedding_ok"] = v1.ok;
        rec.counters["rainbow_ok"] = v1.ok && v2.ok;
        if (!v1.ok || !v2.ok)
            fail(ErrorKind::Internal, "pipeline produced an embedding that fails verification", "verify");
        res.ok = true;
        res.embedding = std::move(phi.assignment);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::Internal) {
            res.internal = std::current_exception();
            return res;
        }
        res.stage = e.stage().empty() ? "attempt" : e.stage();
        res.message = e.what();
        res.error = e.kind() == ErrorKind::Precondition ? ErrorKind::Precondition : ErrorKind::RetriesExhausted;
        tr.add(res.stage, attempt).notes.push_back(res.message);
    }
    return res;
}

// runs attempts in parallel batches; the lowest successful index wins
template <typename F> EmbedOutcome run_attempts(std::size_t retries, F &&one, Transcript head)
{
    EmbedOutcome out;
    out.transcript = std::move(head);
    const std::size_t total = std::max<std::size_t>(1, retries);
    const std::size_t batch = std::max(1, kernels::thread_budget());
    std::size_t done = 0;
    AttemptResult last;
    while (done < total) {
        const std::size_t hi = std::min(total, done + batch);
        std::vector<AttemptResult> results(hi - done);
#pragma omp parallel for schedule(dynamic, 1) num_threads(int(std::min(batch, hi - done)))
        for (std::size_t a = done; a < hi; ++a)
            results[a - done] = one(a);
        for (std::size_t a = done; a < hi; ++a) {
            auto &r = results[a - done];
            if (r.internal)
                std::rethrow_exception(r.internal);
            out.transcript.append(r.transcript);
            out.transcript.attempts_used = a + 1;
            if (r.ok) {
                out.success = true;
                out.embedding = std::move(r.embedding);
                out.transcript.verdict = "success";
                return out;
            }
            last = std::move(r);
        }
        done = hi;
    }
    out.failed_stage = last.stage;
    out.message = last.message;
    out.error = last.error;
    out.transcript.verdict = "failed: " + last.stage;
    return out;
}

void fill_edge_colours(EmbedOutcome &out, const ColouredGraph &H, const ColouredGraph &G)
{
    out.edge_colours.clear();
    if (!out.success)
        return;
    for (auto &e : H.edges()) {
        auto ge = G.find_edge(out.embedding[e.u], out.embedding[e.v]);
        out.edge_colours.push_back(G.colours(*ge)[0]);
    }
}

EmbedOutcome gate_failure(Transcript t, std::string stage, std::string message, std::vector<std::string> details)
{
    EmbedOutcome out;
    out.transcript = std::move(t);
    out.failed_stage = std::move(stage);
    out.error = ErrorKind::Gate;
    out.message = std::move(message);
    auto &rec = out.transcript.add(out.failed_stage, 0);
    rec.notes = std::move(details);
    out.transcript.verdict = "gate: " + out.failed_stage;
    return out;
}

[[noreturn]] void throw_outcome(const EmbedOutcome &out)
{
    Error err(out.error, out.message, out.failed_stage);
    for (auto &s : out.transcript.stages)
        if (s.stage == out.failed_stage)
            err.details.insert(err.details.end(), s.notes.begin(), s.notes.end());
    throw err;
}

} // namespace

void validate_config(const PipelineConfig &cfg)
{
    if (!(cfg.gamma > 0 && cfg.gamma <= 1))
        fail(ErrorKind::Precondition, "gamma must lie in (0, 1]");
    if (!(cfg.mu > 0 && cfg.mu < cfg.gamma))
        fail(ErrorKind::Precondition, "mu must satisfy 0 < mu < gamma");
    for (std::size_t i = 0; i < cfg.eps_schedule.size(); ++i) {
        if (!(cfg.eps_schedule[i] > 0))
            fail(ErrorKind::Precondition, "eps schedule entries must be positive");
        if (i > 0 && !(cfg.eps_schedule[i] > cfg.eps_schedule[i - 1]))
            fail(ErrorKind::Precondition, "eps schedule must be strictly increasing");
    }
    if (cfg.retries == 0)
        fail(ErrorKind::Precondition, "retries must be at least 1");
    if (!(cfg.slack >= 0 && cfg.slack < 1))
        fail(ErrorKind::Precondition, "slack must lie in [0, 1)");
}

std::vector<double> eps_schedule(const PipelineConfig &cfg, std::size_t r)
{
    if (!cfg.eps_schedule.empty()) {
        if (cfg.eps_schedule.size() < r + 2)
            fail(ErrorKind::Precondition, "eps schedule needs " + std::to_string(r + 2) + " entries for r=" +
                                              std::to_string(r) + ", got " + std::to_string(cfg.eps_schedule.size()));
        return cfg.eps_schedule;
    }
    std::vector<double> e(r + 2);
    for (std::size_t t = 0; t < e.size(); ++t)
        e[t] = 0.1 * std::ldexp(1.0, int(t));
    return e;
}

StageRecord &Transcript::add(std::string stage, std::size_t attempt)
{
    stages.push_back({std::move(stage), attempt, {}, {}});
    return stages.back();
}

void Transcript::append(const Transcript &other)
{
    stages.insert(stages.end(), other.stages.begin(), other.stages.end());
}

std::string Transcript::to_text() const
{
    std::ostringstream os;
    os << "config";
    for (auto &[k, v] : config)
        os << ' ' << k << '=' << v;
    os << '\n';
    for (auto &s : stages) {
        os << "attempt " << s.attempt << ' ' << s.stage;
        for (auto &[k, v] : s.counters)
            os << ' ' << k << '=' << fmt(v);
        os << '\n';
        for (auto &n : s.notes)
            os << "  note: " << n << '\n';
    }
    os << "attempts " << attempts_used << '\n';
    os << "verdict " << verdict << '\n';
    return os.str();
}

EmbedOutcome try_embed_rainbow(const BlowUpInstance &inst, const PipelineConfig &cfg)
{
    validate_config(cfg);
    Transcript head;
    echo_config(head, cfg);
    try {
        validate_instance(inst);
    } catch (const Error &e) {
        EmbedOutcome out;
        out.transcript = std::move(head);
        out.error = ErrorKind::Precondition;
        out.failed_stage = "instance";
        out.message = e.what();
        out.transcript.verdict = "invalid instance";
        return out;
    }
    eps_schedule(cfg, inst.r());

    if (!cfg.force) {
        auto bound = boundedness_condition(inst, inst.cluster_size());
        if (!bound.passed) {
            std::vector<std::string> details;
            for (auto &c : bound.colours)
                if (!c.passed && details.size() < 100)
                    details.push_back("colour " + inst.G.colour_label(c.colour) + ": " + fmt(c.value) + " > " +
                                      fmt(bound.limit));
            return gate_failure(std::move(head), "boundedness",
                                std::to_string(bound.failures()) + " colours violate the boundedness condition",
                                std::move(details));
        }
        const double geps = cfg.gate_eps >= 0 ? cfg.gate_eps : inst.params.eps;
        for (std::size_t i = 0; i < inst.r(); ++i)
            for (std::size_t j = i + 1; j < inst.r(); ++j) {
                RegularityParams rp{std::min(1.0, geps), inst.params.d, std::max<std::size_t>(1, cfg.sample_count),
                                    derive_seed(cfg.rng_seed, kGateSeed, i * inst.r() + j)};
                bool ok = false;
                try {
                    ok = check_super_regular(inst.G, inst.V[i], inst.V[j], rp).passed;
                } catch (const Error &) {
                    ok = false;
                }
                if (!ok)
                    return gate_failure(std::move(head), "super-regularity",
                                        "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") is not (eps,d)-super-regular",
                                        {"eps=" + fmt(geps) + " d=" + fmt(inst.params.d)});
            }
    }

    auto out = run_attempts(
        cfg.retries,
        [&](std::size_t a) { return run_attempt(inst, cfg, a, derive_seed(cfg.rng_seed, kAttemptStream, a)); },
        std::move(head));
    fill_edge_colours(out, inst.H, inst.G);
    return out;
}

EmbedOutcome embed_rainbow(const BlowUpInstance &inst, const PipelineConfig &cfg)
{
    auto out = try_embed_rainbow(inst, cfg);
    if (!out.success)
        throw_outcome(out);
    return out;
}

QuasirandomGate quasirandom_gate(const ColouredGraph &G, const ColouredGraph &H, double slack)
{
    QuasirandomGate g;
    auto stats = colouring_stats(G);
    g.global_max = stats.global_max;
    g.local_max = stats.local_max;
    g.limit = H.edge_count() ? (1.0 - slack) * double(G.edge_count()) / double(H.edge_count())
                             : std::numeric_limits<double>::infinity();
    g.passed = double(g.global_max) <= g.limit + 1e-9;
    if (!g.passed)
        for (Colour a = 0; a < G.colour_count() && g.offending.size() < 100; ++a)
            if (double(G.colour_size(a)) > g.limit + 1e-9)
                g.offending.emplace_back(a, G.colour_size(a));
    return g;
}

namespace {

struct PartitionCheck {
    bool ok = false;
    std::string failed;
};

PartitionCheck check_partition(const BlowUpInstance &inst, const PipelineConfig &cfg, double qeps,
                               std::uint64_t seed)
{
    const auto r = inst.r();
    const auto &G = inst.G;
    const double N = double(G.vertex_count());
    // (i) each pair (2 r eps, d)-super-regular
    const double pe = std::min(1.0, 2.0 * double(r) * qeps);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            RegularityParams rp{pe, inst.params.d, std::max<std::size_t>(1, cfg.sample_count),
                                derive_seed(seed, 0x71, i * r + j)};
            bool ok = false;
            try {
                ok = check_super_regular(G, inst.V[i], inst.V[j], rp).passed;
            } catch (const Error &) {
            }
            if (!ok)
                return {false, "super-regularity"};
        }
    // (ii) colour balance for the heavy colours
    auto part = part_index(G.vertex_count(), inst.V);
    std::vector<double> cnt(r * r);
    for (Colour a = 0; a < G.colour_count(); ++a) {
        auto cls = G.colour_class(a);
        const double ea = double(cls.size());
        const double expect = 2 * ea / double(r * r);
        if (ea < std::pow(N, 0.75) || expect < cfg.balance_min_expected)
            continue;
        std::fill(cnt.begin(), cnt.end(), 0.0);
        for (auto e : cls) {
            auto i = part[G.edge(e).u], j = part[G.edge(e).v];
            cnt[std::size_t(std::min(i, j)) * r + std::size_t(std::max(i, j))] += 1;
        }
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                if (std::abs(cnt[i * r + j] - expect) > cfg.partition_eps * expect + 1e-9)
                    return {false, "colour-balance"};
    }
    // (iii) sizes, plus the boundedness condition the embedding step needs
    for (std::size_t i = 0; i < r; ++i)
        if (inst.X[i].size() != inst.V[i].size())
            return {false, "sizes"};
    if (!cfg.force && !boundedness_condition(inst, inst.cluster_size()).passed)
        return {false, "boundedness"};
    return {true, {}};
}

} // namespace

EmbedOutcome try_embed_quasirandom(const ColouredGraph &G, const ColouredGraph &H, const PipelineConfig &cfg)
{
    validate_config(cfg);
    Transcript head;
    echo_config(head, cfg);
    const auto N = G.vertex_count();
    if (H.vertex_count() > N) {
        EmbedOutcome out;
        out.transcript = std::move(head);
        out.error = ErrorKind::Precondition;
        out.failed_stage = "instance";
        out.message = "H has more vertices than G";
        out.transcript.verdict = "invalid instance";
        return out;
    }
    auto gate = quasirandom_gate(G, H, cfg.slack);
    {
        auto &rec = head.add("gate", 0);
        rec.counters["global_max"] = double(gate.global_max);
        rec.counters["limit"] = gate.limit;
        rec.counters["local_max"] = double(gate.local_max);
    }
    if (!cfg.force && !gate.passed) {
        std::vector<std::string> details;
        for (auto [c, k] : gate.offending)
            details.push_back("colour " + G.colour_label(c) + " appears " + std::to_string(k) + " times > " +
                              fmt(gate.limit));
        return gate_failure(std::move(head), "boundedness",
                            "colouring is not (1-slack) e(G)/e(H)-bounded: max class " +
                                std::to_string(gate.global_max) + " > " + fmt(gate.limit),
                            std::move(details));
    }

    auto Hp = pad_vertices(H, N);
    const std::size_t Delta = std::max<std::size_t>(1, Hp.max_degree());
    const std::size_t r = std::min(N, Delta + 1);
    auto X = equitable_partition(Hp, r, derive_seed(cfg.rng_seed, kEquitableSeed));
    const double d = N > 1 ? 2.0 * double(G.edge_count()) / (double(N) * double(N - 1)) : 0.0;
    const double qeps = cfg.gate_eps >= 0 ? cfg.gate_eps : 0.05;
    {
        auto &rec = head.add("equitable-partition", 0);
        rec.counters["r"] = double(r);
        rec.counters["Delta"] = double(Delta);
        rec.counters["density"] = d;
    }

    auto out = run_attempts(
        cfg.retries,
        [&](std::size_t a) {
            AttemptResult res;
            const auto seed = derive_seed(cfg.rng_seed, kAttemptStream, a);
            BlowUpInstance inst;
            inst.H = Hp;
            inst.G = G;
            inst.X = X;
            inst.params.eps = qeps;
            inst.params.d = d;
            inst.params.Delta = Delta;
            inst.params.Lambda = gate.local_max;
            inst.params.gamma = cfg.slack / 2;
            std::size_t tries = 0;
            std::map<std::string, double> reasons;
            bool found = false;
            for (; tries < std::max<std::size_t>(1, cfg.partition_retries) && !found; ++tries) {
                Rng rng(derive_seed(seed, kPartitionStream, tries));
                VertexSet perm(N);
                std::iota(perm.begin(), perm.end(), 0u);
                rng.shuffle(perm);
                inst.V.assign(r, {});
                std::size_t at = 0;
                for (std::size_t i = 0; i < r; ++i) {
                    inst.V[i].assign(perm.begin() + long(at), perm.begin() + long(at + X[i].size()));
                    std::sort(inst.V[i].begin(), inst.V[i].end());
                    at += X[i].size();
                }
                auto pc = check_partition(inst, cfg, qeps, derive_seed(seed, kPartitionStream + 1, tries));
                found = pc.ok;
                if (!found)
                    reasons[pc.failed] += 1;
            }
            auto &rec = res.transcript.add("host-partition", a);
            rec.counters["tries"] = double(tries);
            for (auto &[k, v] : reasons)
                rec.counters["rejected_" + k] = v;
            if (!found) {
                res.stage = "host-partition";
                res.message = "no host partition passed the checks in " + std::to_string(tries) + " tries";
                return res;
            }
            PipelineConfig inner = cfg;
            auto sub = run_attempt(inst, inner, a, seed);
            res.transcript.append(sub.transcript);
            sub.transcript = std::move(res.transcript);
            return sub;
        },
        std::move(head));

    if (out.success) {
        out.embedding.resize(H.vertex_count());
        auto v1 = check_embedding(H, G, out.embedding);
        auto v2 = check_rainbow(G, out.embedding, H);
        if (!v1.ok || !v2.ok)
            fail(ErrorKind::Internal, "quasirandom driver produced an invalid embedding", "verify");
    }
    fill_edge_colours(out, H, G);
    return out;
}

EmbedOutcome embed_quasirandom(const ColouredGraph &G, const ColouredGraph &H, const PipelineConfig &cfg)
{
    auto out = try_embed_quasirandom(G, H, cfg);
    if (!out.success)
        throw_outcome(out);
    return out;
}

} // namespace rainbow

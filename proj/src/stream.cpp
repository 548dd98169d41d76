#include "dsg/stream.hpp"

#include <chrono>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dsg/estimator.hpp"
#include "dsg/hypergraph.hpp"
#include "dsg/numeric.hpp"
#include "dsg/oracle.hpp"

namespace dsg {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::int64_t parse_int(const std::string& tok, int line, const char* what) {
    try {
        size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw StreamError("line " + std::to_string(line) + ": bad " + what + " '" + tok + "'");
    }
}

}  // namespace

ParsedStream parse_stream(const std::string& text) {
    ParsedStream out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto toks = tokenize(raw);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (!header_seen) {
            if (toks[0] != "dsg" || (toks.size() != 2 && toks.size() != 4))
                throw StreamError("line " + std::to_string(line) +
                                  ": expected header 'dsg <n> [rank <r>]'");
            out.n = parse_int(toks[1], line, "vertex count");
            if (out.n < 1)
                throw StreamError("line " + std::to_string(line) + ": vertex count must be >= 1");
            if (toks.size() == 4) {
                if (toks[2] != "rank")
                    throw StreamError("line " + std::to_string(line) + ": expected 'rank'");
                out.rank = parse_int(toks[3], line, "rank");
                if (*out.rank < 2)
                    throw StreamError("line " + std::to_string(line) + ": rank must be >= 2");
            }
            header_seen = true;
            continue;
        }
        UpdateEvent ev;
        ev.line = line;
        if (toks[0] == "+") ev.kind = EventKind::insert;
        else if (toks[0] == "-") ev.kind = EventKind::erase;
        else if (toks[0] == "qv") ev.kind = EventKind::query_value;
        else if (toks[0] == "qs") ev.kind = EventKind::query_subgraph;
        else
            throw StreamError("line " + std::to_string(line) + ": unknown event '" + toks[0] + "'");
        if (ev.kind == EventKind::query_value || ev.kind == EventKind::query_subgraph) {
            if (toks.size() != 1)
                throw StreamError("line " + std::to_string(line) + ": queries take no arguments");
        } else {
            std::int64_t max_arity = out.rank.value_or(2);
            if ((std::int64_t)toks.size() - 1 < 2 || (std::int64_t)toks.size() - 1 > max_arity)
                throw StreamError("line " + std::to_string(line) + ": expected between 2 and " +
                                  std::to_string(max_arity) + " endpoints");
            for (size_t i = 1; i < toks.size(); ++i) {
                std::int64_t v = parse_int(toks[i], line, "vertex id");
                if (v < 0 || v >= out.n)
                    throw StreamError("line " + std::to_string(line) + ": vertex id " +
                                      std::to_string(v) + " out of range");
                ev.payload.push_back((Vertex)v);
            }
        }
        out.events.push_back(std::move(ev));
    }
    if (!header_seen) throw StreamError("missing 'dsg <n>' header");
    return out;
}

std::string run_mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::amortized: return "amortized";
        case RunMode::worstcase: return "worstcase";
        case RunMode::combined: return "combined";
        case RunMode::hypergraph: return "hypergraph";
    }
    return "?";
}

std::optional<RunMode> run_mode_from_name(const std::string& name) {
    if (name == "amortized") return RunMode::amortized;
    if (name == "worstcase") return RunMode::worstcase;
    if (name == "combined") return RunMode::combined;
    if (name == "hypergraph") return RunMode::hypergraph;
    return std::nullopt;
}

namespace {

struct GraphRunner {
    DensityEstimator est;
    explicit GraphRunner(EstimatorMode mode, const Config& cfg) : est(mode, cfg) {}
};

// qv/qs brackets checked in --verify mode, exact rationals throughout
struct VerifyContext {
    Rational eps;
    Rational additive;       // 4 ln(n) / (eps * k), lower ln bound
    Rational additive_raw;   // same with k = 1, for the rejected branch
    std::int64_t T = 0;
};

void verify_graph_query(const DensityEstimator& est, const VerifyContext& vc,
                        const Rational& value, int line) {
    EdgeList g = est.logical_edges();
    Rational opt = exact_density_flow(g).opt_density;
    if (value < opt)
        throw VerificationError("line " + std::to_string(line) +
                                ": value below the exact optimum");
    if (est.rejects_truncated()) {
        // the dispatch guarantee: a rejected truncated answer certifies a
        // density of at least T
        if (opt < Rational(vc.T))
            throw VerificationError("line " + std::to_string(line) +
                                    ": truncated answer rejected but density below T");
        if (value > (Rational(1) + vc.eps) * opt + vc.additive_raw)
            throw VerificationError("line " + std::to_string(line) +
                                    ": value above the bracket (raw branch)");
    } else if (value > (Rational(1) + vc.eps) * opt + vc.additive) {
        throw VerificationError("line " + std::to_string(line) + ": value above the bracket");
    }
}

}  // namespace

RunReport run_stream(const ParsedStream& stream, const RunOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    if (stream.rank && opts.mode != RunMode::hypergraph)
        throw StreamError("rank streams require --mode hypergraph");

    RunReport rep;
    rep.mode = opts.mode;
    rep.n = stream.n;
    rep.rank = stream.rank;
    rep.verified = opts.verify;

    Rational eps = opts.eps.value_or(Rational(1, 4));
    Config cfg;
    cfg.n = stream.n;
    cfg.eps = eps;
    cfg.alpha = opts.alpha.value_or(Config::default_alpha(stream.n, eps));
    cfg.budget_c = opts.budget_c.value_or(4);
    std::int64_t rank = stream.rank.value_or(2);
    if (opts.mode == RunMode::hypergraph)
        cfg.dup_k = opts.dup_k.value_or(HypergraphEstimator::default_dup_k(stream.n, eps, rank));
    else
        cfg.dup_k = opts.dup_k.value_or(Config::default_dup_k(stream.n, eps));
    cfg.threshold_T = opts.threshold_T;
    cfg.validate();

    rep.eps = cfg.eps;
    rep.alpha = cfg.alpha;
    rep.budget_c = cfg.budget_c;
    rep.dup_k = cfg.dup_k;

    VerifyContext vc;
    vc.eps = eps;
    vc.additive = Rational(4) * ln_lower(stream.n) / (eps * Rational(cfg.dup_k));
    vc.additive_raw = Rational(4) * ln_lower(stream.n) / eps;

    auto fail_event = [](size_t idx, int line, const std::string& what) {
        throw StreamError("line " + std::to_string(line) + " (event " + std::to_string(idx) +
                          "): " + what);
    };

    if (opts.mode == RunMode::hypergraph) {
        if (opts.verify && stream.n > 20)
            throw StreamError("--verify on hypergraph streams requires n <= 20");
        HypergraphEstimator est(cfg, rank);
        // endpoint multiset -> live handles, oldest first, for `-` events
        std::map<std::vector<Vertex>, std::vector<HyperedgeId>> live;
        for (size_t i = 0; i < stream.events.size(); ++i) {
            const UpdateEvent& ev = stream.events[i];
            try {
                switch (ev.kind) {
                    case EventKind::insert: {
                        auto key = ev.payload;
                        std::sort(key.begin(), key.end());
                        live[key].push_back(est.insert_edge(ev.payload));
                        break;
                    }
                    case EventKind::erase: {
                        auto key = ev.payload;
                        std::sort(key.begin(), key.end());
                        auto it = live.find(key);
                        if (it == live.end() || it->second.empty())
                            throw UpdateError("edge not present");
                        est.delete_edge(it->second.front());
                        it->second.erase(it->second.begin());
                        if (it->second.empty()) live.erase(it);
                        break;
                    }
                    case EventKind::query_value: {
                        QueryAnswer qa;
                        qa.kind = ev.kind;
                        qa.value = est.density_value();
                        if (opts.verify) {
                            Rational opt = exact_hyper_density(est.logical_edges()).opt_density;
                            if (qa.value < opt ||
                                qa.value > (Rational(1) + eps) * opt + vc.additive)
                                throw VerificationError("line " + std::to_string(ev.line) +
                                                        ": value outside the bracket");
                        }
                        rep.answers.push_back(std::move(qa));
                        break;
                    }
                    case EventKind::query_subgraph: {
                        QueryAnswer qa;
                        qa.kind = ev.kind;
                        qa.set = est.densest_subgraph();
                        qa.set_density =
                            qa.set.empty() ? Rational(0) : est.subgraph_density(qa.set);
                        if (opts.verify && est.edge_count() > 0) {
                            Rational opt = exact_hyper_density(est.logical_edges()).opt_density;
                            if (qa.set_density < (Rational(1) - eps) * opt - vc.additive)
                                throw VerificationError("line " + std::to_string(ev.line) +
                                                        ": extracted set below the bracket");
                        }
                        rep.answers.push_back(std::move(qa));
                        break;
                    }
                }
            } catch (const UpdateError& e) {
                fail_event(i, ev.line, e.what());
            }
            ++rep.events;
            if (opts.verify) {
                auto bad = est.check_invariants();
                if (!bad.empty())
                    throw VerificationError("line " + std::to_string(ev.line) + ": " + bad[0]);
            }
        }
        rep.threshold_T = cfg.threshold_T;
        const Counters& c = est.inner().counters();
        rep.total_iterations = c.arcs_processed;
        rep.total_flips = c.flips;
        rep.total_label_resets = c.label_resets;
        rep.max_op_iterations = c.max_op_iterations;
        rep.max_recursion_depth = c.max_op_depth;
    } else {
        EstimatorMode emode = opts.mode == RunMode::amortized  ? EstimatorMode::amortized
                              : opts.mode == RunMode::worstcase ? EstimatorMode::worstcase
                                                                : EstimatorMode::combined;
        DensityEstimator est(emode, cfg);
        vc.T = est.logical_threshold();
        rep.threshold_T = opts.mode == RunMode::combined
                              ? std::optional<std::int64_t>(est.logical_threshold())
                              : opts.threshold_T;
        for (size_t i = 0; i < stream.events.size(); ++i) {
            const UpdateEvent& ev = stream.events[i];
            try {
                switch (ev.kind) {
                    case EventKind::insert:
                        est.insert_edge(ev.payload[0], ev.payload[1]);
                        break;
                    case EventKind::erase:
                        est.delete_edge(ev.payload[0], ev.payload[1]);
                        break;
                    case EventKind::query_value: {
                        QueryAnswer qa;
                        qa.kind = ev.kind;
                        qa.value = est.density_value();
                        if (opts.verify) verify_graph_query(est, vc, qa.value, ev.line);
                        rep.answers.push_back(std::move(qa));
                        break;
                    }
                    case EventKind::query_subgraph: {
                        QueryAnswer qa;
                        qa.kind = ev.kind;
                        qa.set = est.densest_subgraph();
                        qa.set_density =
                            qa.set.empty() ? Rational(0) : est.subgraph_density(qa.set);
                        if (opts.verify && est.edge_count() > 0) {
                            Rational opt = exact_density_flow(est.logical_edges()).opt_density;
                            Rational add =
                                est.rejects_truncated() ? vc.additive_raw : vc.additive;
                            if (qa.set_density < (Rational(1) - eps) * opt - add)
                                throw VerificationError("line " + std::to_string(ev.line) +
                                                        ": extracted set below the bracket");
                        }
                        rep.answers.push_back(std::move(qa));
                        break;
                    }
                }
            } catch (const UpdateError& e) {
                fail_event(i, ev.line, e.what());
            }
            ++rep.events;
            if (opts.verify) {
                auto bad = est.check_invariants();
                if (!bad.empty())
                    throw VerificationError("line " + std::to_string(ev.line) + ": " + bad[0]);
            }
        }
        const Counters& c = est.primary().structure().counters();
        rep.total_iterations = c.arcs_processed;
        rep.total_flips = c.flips;
        rep.total_label_resets = c.label_resets;
        rep.max_op_iterations = c.max_op_iterations;
        rep.max_recursion_depth = c.max_op_depth;
        if (est.secondary()) {
            const Counters& s = est.secondary()->structure().counters();
            rep.total_iterations += s.arcs_processed;
            rep.total_flips += s.flips;
            rep.total_label_resets += s.label_resets;
            rep.max_op_iterations = std::max(rep.max_op_iterations, s.max_op_iterations);
            rep.max_recursion_depth = std::max(rep.max_recursion_depth, s.max_op_depth);
        }
    }

    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

std::string RunReport::metrics_json() const {
    nlohmann::json j;
    j["mode"] = run_mode_name(mode);
    j["n"] = n;
    if (rank) j["rank"] = *rank;
    j["eps"] = eps.str();
    j["alpha"] = alpha.str();
    j["budget_c"] = budget_c;
    j["dup_k"] = dup_k;
    if (threshold_T) j["threshold_t"] = *threshold_T;
    j["events"] = events;
    j["queries"] = (long long)answers.size();
    j["total_iterations"] = total_iterations;
    j["total_flips"] = total_flips;
    j["total_label_resets"] = total_label_resets;
    j["max_op_iterations"] = max_op_iterations;
    j["max_recursion_depth"] = max_recursion_depth;
    j["verify"] = verified ? "clean" : "off";
    return j.dump();
}

std::string format_report(const RunReport& report, bool metrics_only) {
    std::string out;
    if (!metrics_only) {
        for (const QueryAnswer& qa : report.answers) {
            if (qa.kind == EventKind::query_value) {
                out += "value " + qa.value.str() + "\n";
            } else {
                out += "subgraph";
                for (Vertex v : qa.set) out += " " + std::to_string(v);
                out += "\n";
            }
        }
    }
    out += "metrics " + report.metrics_json() + "\n";
    return out;
}

}  // namespace dsg

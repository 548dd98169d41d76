#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsg/config.hpp"
#include "dsg/orientation_core.hpp"

namespace dsg {

enum class EventKind { insert, erase, query_value, query_subgraph };

struct UpdateEvent {
    EventKind kind;
    std::vector<Vertex> payload;  // endpoints; empty for queries
    int line = 0;
};

struct StreamError : std::runtime_error {
    explicit StreamError(const std::string& what) : std::runtime_error(what) {}
};

struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// Header `dsg <n> [rank <r>]`, then one event per line: `+ u v [w...]`,
// `- u v [w...]`, `qv`, `qs`. Lines whose first non-blank character is `#`
// are comments. Vertex ids are 0-based and validated against n.
struct ParsedStream {
    std::int64_t n = 0;
    std::optional<std::int64_t> rank;
    std::vector<UpdateEvent> events;
};

ParsedStream parse_stream(const std::string& text);

enum class RunMode { amortized, worstcase, combined, hypergraph };

std::string run_mode_name(RunMode mode);
std::optional<RunMode> run_mode_from_name(const std::string& name);

struct RunOptions {
    RunMode mode = RunMode::combined;
    std::optional<Rational> eps;
    std::optional<Rational> alpha;
    std::optional<std::int64_t> budget_c;
    std::optional<std::int64_t> dup_k;
    std::optional<std::int64_t> threshold_T;
    bool verify = false;
};

struct QueryAnswer {
    EventKind kind;
    Rational value;           // qv: reported density
    std::vector<Vertex> set;  // qs: extracted vertices, ascending
    Rational set_density;     // qs: exact density of the set in the logical graph
};

struct RunReport {
    RunMode mode = RunMode::combined;
    std::int64_t n = 0;
    std::optional<std::int64_t> rank;
    Rational eps;
    Rational alpha;
    std::int64_t budget_c = 0;
    std::int64_t dup_k = 0;
    std::optional<std::int64_t> threshold_T;
    bool verified = false;

    std::vector<QueryAnswer> answers;
    long long events = 0;
    long long total_iterations = 0;
    long long total_flips = 0;
    long long total_label_resets = 0;
    long long max_op_iterations = 0;
    long long max_recursion_depth = 0;
    double wall_ms = 0;  // in-memory only; the metrics line stays deterministic

    std::string metrics_json() const;
};

// Applies the events in order; answers every query; throws StreamError with
// the offending event index on rejected updates and VerificationError when
// --verify finds an invariant or oracle-bracket violation.
RunReport run_stream(const ParsedStream& stream, const RunOptions& opts);

// The exact CLI output: one line per query answer, then `metrics <json>`.
std::string format_report(const RunReport& report, bool metrics_only);

}  // namespace dsg

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dsg/stream.hpp"

namespace {

int run(const std::string& path, const dsg::RunOptions& opts, bool metrics_only) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "error: cannot open '" << path << "'\n";
            return 2;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        dsg::ParsedStream stream = dsg::parse_stream(text);
        dsg::RunReport report = dsg::run_stream(stream, opts);
        std::cout << dsg::format_report(report, metrics_only);
        return 0;
    } catch (const dsg::VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 3;
    } catch (const dsg::StreamError& e) {
        std::cerr << "stream error: " << e.what() << "\n";
        return 2;
    } catch (const dsg::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fully dynamic densest-subgraph maintenance over update streams"};

    std::string path;
    std::string mode_name = "combined";
    std::string eps_text, alpha_text;
    std::int64_t budget_c = -1, dup_k = -1, threshold_t = -1;
    bool verify = false, metrics_only = false;

    app.add_option("stream", path, "stream file, or '-' for stdin")->required();
    app.add_option("--mode", mode_name, "amortized | worstcase | combined | hypergraph")
        ->capture_default_str();
    app.add_option("--eps", eps_text, "approximation target, e.g. 1/4 or 0.25");
    app.add_option("--alpha", alpha_text, "slack rate override, e.g. 1/8");
    app.add_option("--budget-c", budget_c, "arcs per check call constant C");
    app.add_option("--dup-k", dup_k, "edge duplication count k");
    app.add_option("--threshold-t", threshold_t, "truncation threshold T");
    app.add_flag("--verify", verify, "check invariants and oracle brackets per event");
    app.add_flag("--metrics-only", metrics_only, "print only the metrics line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    dsg::RunOptions opts;
    auto mode = dsg::run_mode_from_name(mode_name);
    if (!mode) {
        std::cerr << "usage error: unknown mode '" << mode_name << "'\n";
        return 1;
    }
    opts.mode = *mode;
    try {
        if (!eps_text.empty()) opts.eps = dsg::Rational::parse(eps_text);
        if (!alpha_text.empty()) opts.alpha = dsg::Rational::parse(alpha_text);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
    if (budget_c >= 0) opts.budget_c = budget_c;
    if (dup_k >= 0) opts.dup_k = dup_k;
    if (threshold_t >= 0) opts.threshold_T = threshold_t;
    opts.verify = verify;

    return run(path, opts, metrics_only);
}
